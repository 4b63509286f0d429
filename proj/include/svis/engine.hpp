#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "svis/infection.hpp"
#include "svis/model.hpp"
#include "svis/scheduling.hpp"

namespace svis {

struct InitialInfection {
  int student_id = 0;
  int day = 0;
};

struct ReplicationConfig {
  SchoolConfig school;
  SimulationParams params;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_key = 0;
  // Default: the first student of Group A seeds the run on day 0.
  std::vector<InitialInfection> initial_infections = {{0, 0}};
  std::ostream* trace = nullptr;  // per-day phase dump when set
};

// Immutable per-slot occupancy lists precomputed from a timetable, shared by
// every replication of the same schedule.
struct LessonPlan {
  int cycle_days = 7;
  int periods = 7;
  int rooms = 1;
  int num_students = 0;
  std::vector<std::vector<int>> occupants;  // [(cycle day * periods + p) * rooms + r]

  explicit LessonPlan(const Timetable& timetable);

  const std::vector<int>& room_occupants(int cycle_day, int period,
                                         int room) const {
    return occupants[(static_cast<std::size_t>(cycle_day) * periods + period) *
                         rooms +
                     room];
  }
};

struct ReplicationResult {
  int num_students = 0;
  int rooms = 1;
  int periods = 7;
  std::vector<std::array<int, kPhaseCount>> daily_phase_counts;
  std::vector<double> cell_probabilities;  // [day][room][period]
  std::vector<int> new_infections;
  int peak_infected = 0;
  int peak_day = 0;
  int total_ever_infected = 0;

  double cell(int day, int room, int period) const {
    return cell_probabilities[(static_cast<std::size_t>(day) * rooms + room) *
                                  periods +
                              period];
  }
};

// One seeded replication: attendance resolution, per-period exposure
// sampling, day-boundary advancement. Deterministic given the seeds.
ReplicationResult run_replication(const ReplicationConfig& config,
                                  const LessonPlan& plan);

}  // namespace svis
