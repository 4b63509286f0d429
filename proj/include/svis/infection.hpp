#pragma once

#include <vector>

#include "svis/model.hpp"
#include "svis/random.hpp"

namespace svis {

// Per-phase durations and the symptomatic/asymptomatic branch probability.
struct TransitionSchedule {
  int exposed_days = 3;
  int infectious_exposed_days = 2;
  int infectious_days = 14;
  int asymptomatic_days = 8;
  double asymptomatic_rate = 0.3;

  static TransitionSchedule from_params(const SimulationParams& params) {
    return {params.exposed_days, params.infectious_exposed_days,
            params.infectious_days, params.asymptomatic_days,
            params.asymptomatic_rate};
  }
};

// Extended Wells-Riley probability for one lesson period,
// 1 - exp(-I q p t (1-n_I)(1-n_S) / Q) with t converted to hours.
double infection_probability(const LessonExposure& exposure,
                             const SimulationParams& params);

// Each susceptible is independently infected with probability p.
// Returns the chosen ids in input order.
std::vector<int> bernoulli_expose(const std::vector<int>& susceptibles,
                                  double p, RandomStream& rng);

// Applied once per agent at the boundary after day `day`'s lessons.
AgentState advance_day(AgentState state, int day,
                       const TransitionSchedule& schedule, RandomStream& rng);

// Infection sampled during day `day` takes effect the following day.
AgentState infect(AgentState state, int day);

// Infectious students stay home; everyone else attends when scheduled.
bool attends_school(const AgentState& state);

// Infectors are the infectious-exposed and asymptomatic students.
bool is_infector(const AgentState& state);

}  // namespace svis
