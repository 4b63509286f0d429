#include "svis/engine.hpp"

#include <ostream>
#include <stdexcept>

namespace svis {

LessonPlan::LessonPlan(const Timetable& timetable)
    : cycle_days(timetable.cycle_days),
      periods(timetable.periods),
      rooms(timetable.rooms.rooms),
      num_students(timetable.num_students) {
  occupants.resize(static_cast<std::size_t>(cycle_days) * periods * rooms);
  for (int s = 0; s < num_students; ++s)
    for (int d = 0; d < cycle_days; ++d)
      for (int p = 0; p < periods; ++p) {
        const int room = timetable.room_for(s, d, p);
        if (room >= 0)
          occupants[(static_cast<std::size_t>(d) * periods + p) * rooms + room]
              .push_back(s);
      }
}

ReplicationResult run_replication(const ReplicationConfig& config,
                                  const LessonPlan& plan) {
  const auto report = validate(config.school, config.params);
  if (!report.empty())
    throw std::invalid_argument("run_replication: invalid config: " +
                                report.front());
  const int n = config.school.total_students;
  if (n != plan.num_students)
    throw std::invalid_argument("run_replication: plan/config mismatch");
  const int horizon_days = config.params.horizon_days();
  for (const auto& seed_case : config.initial_infections)
    if (seed_case.student_id < 0 || seed_case.student_id >= n ||
        seed_case.day < 0 || seed_case.day >= horizon_days)
      throw std::invalid_argument(
          "run_replication: initial infection out of range");

  const TransitionSchedule schedule =
      TransitionSchedule::from_params(config.params);
  RandomStream rng = derive_substream(config.master_seed, config.stream_key);

  std::vector<AgentState> agents(n);
  for (int s = 0; s < n; ++s) agents[s] = {s, InfectionPhase::Susceptible, 0};

  ReplicationResult result;
  result.num_students = n;
  result.rooms = plan.rooms;
  result.periods = plan.periods;
  result.daily_phase_counts.resize(horizon_days);
  result.cell_probabilities.assign(
      static_cast<std::size_t>(horizon_days) * plan.rooms * plan.periods, 0.0);
  result.new_infections.assign(horizon_days, 0);

  int seeded = 0;
  std::vector<char> newly(n, 0);
  for (int day = 0; day < horizon_days; ++day) {
    // Seeds enter infectious-exposed directly on their scheduled day.
    for (const auto& seed_case : config.initial_infections) {
      if (seed_case.day == day &&
          agents[seed_case.student_id].phase == InfectionPhase::Susceptible) {
        agents[seed_case.student_id].phase = InfectionPhase::InfectiousExposed;
        agents[seed_case.student_id].phase_entry_day = day;
        ++seeded;
      }
    }

    const int cycle_day = day % plan.cycle_days;
    std::fill(newly.begin(), newly.end(), 0);
    for (int period = 0; period < plan.periods; ++period) {
      for (int room = 0; room < plan.rooms; ++room) {
        const auto& scheduled = plan.room_occupants(cycle_day, period, room);
        if (scheduled.empty()) continue;
        int infectors = 0;
        int susceptibles = 0;
        for (const int s : scheduled) {
          if (!attends_school(agents[s])) continue;
          if (is_infector(agents[s])) ++infectors;
          if (agents[s].phase == InfectionPhase::Susceptible) ++susceptibles;
        }
        double probability = 0.0;
        if (infectors > 0) {
          probability = infection_probability(
              LessonExposure{infectors, susceptibles,
                             config.school.lesson_minutes,
                             config.school.classroom},
              config.params);
          for (const int s : scheduled) {
            if (agents[s].phase != InfectionPhase::Susceptible) continue;
            if (rng.bernoulli(probability)) newly[s] = 1;
          }
        }
        result.cell_probabilities[(static_cast<std::size_t>(day) * plan.rooms +
                                   room) *
                                      plan.periods +
                                  period] = probability;
      }
    }

    // Day boundary: infections take effect, then every agent advances.
    int new_count = 0;
    for (int s = 0; s < n; ++s) {
      if (newly[s] && agents[s].phase == InfectionPhase::Susceptible) {
        agents[s] = infect(agents[s], day);
        ++new_count;
      }
    }
    result.new_infections[day] = new_count;
    for (int s = 0; s < n; ++s)
      agents[s] = advance_day(agents[s], day, schedule, rng);

    auto& counts = result.daily_phase_counts[day];
    counts.fill(0);
    for (const auto& agent : agents) ++counts[static_cast<int>(agent.phase)];
    const int infected =
        counts[static_cast<int>(InfectionPhase::Exposed)] +
        counts[static_cast<int>(InfectionPhase::InfectiousExposed)] +
        counts[static_cast<int>(InfectionPhase::Infectious)] +
        counts[static_cast<int>(InfectionPhase::Asymptomatic)];
    if (infected > result.peak_infected) {
      result.peak_infected = infected;
      result.peak_day = day;
    }

    if (config.trace) {
      for (const auto& agent : agents)
        *config.trace << day << ' ' << agent.student_id << ' '
                      << phase_name(agent.phase) << '\n';
    }
  }

  result.total_ever_infected = seeded;
  for (const int c : result.new_infections) result.total_ever_infected += c;
  return result;
}

}  // namespace svis
