#include "svis/infection.hpp"

#include <cmath>
#include <stdexcept>

namespace svis {

double infection_probability(const LessonExposure& exposure,
                             const SimulationParams& params) {
  if (exposure.infector_count == 0) return 0.0;
  const double q = exposure.room.clean_air_ventilation_rate();
  if (!(q > 0.0))
    throw std::invalid_argument("LessonExposure.room: Q must be positive");
  if (exposure.exposure_minutes < 0.0)
    throw std::invalid_argument(
        "LessonExposure.exposure_minutes: must be non-negative");
  const double hours = exposure.exposure_minutes / 60.0;
  const double exponent =
      exposure.infector_count * params.quanta_generation_rate *
      params.pulmonary_ventilation_rate * hours *
      (1.0 - params.exhalation_filtration_efficiency) *
      (1.0 - params.respiration_filtration_efficiency) / q;
  return -std::expm1(-exponent);
}

std::vector<int> bernoulli_expose(const std::vector<int>& susceptibles,
                                  double p, RandomStream& rng) {
  std::vector<int> infected;
  for (const int id : susceptibles) {
    if (rng.bernoulli(p)) infected.push_back(id);
  }
  return infected;
}

AgentState advance_day(AgentState state, int day,
                       const TransitionSchedule& schedule, RandomStream& rng) {
  const int elapsed = day + 1 - state.phase_entry_day;
  switch (state.phase) {
    case InfectionPhase::Exposed:
      if (elapsed >= schedule.exposed_days) {
        state.phase = InfectionPhase::InfectiousExposed;
        state.phase_entry_day = day + 1;
      }
      break;
    case InfectionPhase::InfectiousExposed:
      if (elapsed >= schedule.infectious_exposed_days) {
        state.phase = rng.bernoulli(schedule.asymptomatic_rate)
                          ? InfectionPhase::Asymptomatic
                          : InfectionPhase::Infectious;
        state.phase_entry_day = day + 1;
      }
      break;
    case InfectionPhase::Infectious:
      if (elapsed >= schedule.infectious_days) {
        state.phase = InfectionPhase::Recovered;
        state.phase_entry_day = day + 1;
      }
      break;
    case InfectionPhase::Asymptomatic:
      if (elapsed >= schedule.asymptomatic_days) {
        state.phase = InfectionPhase::Recovered;
        state.phase_entry_day = day + 1;
      }
      break;
    case InfectionPhase::Susceptible:
    case InfectionPhase::Recovered:
      break;
  }
  return state;
}

AgentState infect(AgentState state, int day) {
  if (state.phase != InfectionPhase::Susceptible)
    throw std::logic_error("infect: agent is not susceptible");
  state.phase = InfectionPhase::Exposed;
  state.phase_entry_day = day + 1;
  return state;
}

bool attends_school(const AgentState& state) {
  return state.phase != InfectionPhase::Infectious;
}

bool is_infector(const AgentState& state) {
  return state.phase == InfectionPhase::InfectiousExposed ||
         state.phase == InfectionPhase::Asymptomatic;
}

}  // namespace svis
