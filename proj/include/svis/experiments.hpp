#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "svis/metrics.hpp"
#include "svis/model.hpp"
#include "svis/scheduling.hpp"

namespace svis {

// One (schedule pattern, room pattern, ventilation) combination.
struct PlanCase {
  ScheduleType type = ScheduleType::T1;
  ClassroomMode mode = ClassroomMode::SelfContained;
  int pattern_id = 0;       // face-to-face pattern
  int room_pattern_id = 0;  // meaningful in departmentalized mode only
  double ventilation = 450.0;
  int replications = 0;
};

struct ExperimentPlan {
  int experiment = 2;
  ClassroomMode mode = ClassroomMode::SelfContained;
  std::vector<PlanCase> cases;

  long long total_replications() const;
  long long type_replications(ScheduleType type) const;
};

// Replications per (face-to-face pattern, room pattern) combination.
int replications_per_case(ScheduleType type, ClassroomMode mode);

// Ventilation sweep over Q in {450, 900, 1350, 1800} m3/h, type (i) schedule.
ExperimentPlan preset_experiment1(ClassroomMode mode);

// All twelve schedule types at the baseline ventilation rate.
ExperimentPlan preset_experiment2(ClassroomMode mode);

struct RunOptions {
  std::uint64_t master_seed = 1;
  int parallelism = 0;  // 0 = SVIS_PARALLELISM env var, else hardware
  std::string output_dir = "out";
  SimulationParams params = default_params();
  std::optional<SchoolConfig> school_override;
  bool trace = false;  // dump the first replication's phase trajectory
};

struct RunOutputs {
  std::vector<PeakRow> peaks;
  std::vector<SummaryRow> summary;
  std::vector<HistogramRow> histograms;
  std::string trace_text;
};

int effective_parallelism(int requested);

// Bounded worker pool over an atomic task index; tasks must be independent.
void parallel_for(std::size_t count, int parallelism,
                  const std::function<void(std::size_t task, int worker)>& fn);

// Executes every replication of the plan and reduces the results in a fixed
// (case, replication) order; output is invariant to the parallelism degree.
RunOutputs execute(const ExperimentPlan& plan, const RunOptions& options);

// execute() plus CSV and manifest files in options.output_dir.
// Exit status: 0 success, 1 invalid configuration, 2 runtime/I-O failure.
int run(const ExperimentPlan& plan, const RunOptions& options);

}  // namespace svis
