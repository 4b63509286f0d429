#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "svis/experiments.hpp"

using namespace svis;

namespace {

std::string csv_fingerprint(const RunOutputs& outputs) {
  std::ostringstream out;
  write_peaks_csv(out, outputs.peaks);
  write_summary_csv(out, outputs.summary);
  write_histogram_csv(out, outputs.histograms);
  return out.str();
}

}  // namespace

TEST_CASE("schedule-comparison plan totals match the simulation tables") {
  const ExperimentPlan self = preset_experiment2(ClassroomMode::SelfContained);
  for (const ScheduleType type : all_schedule_types())
    CHECK(self.type_replications(type) == 3600);
  CHECK(self.total_replications() == 12 * 3600);

  const ExperimentPlan dep =
      preset_experiment2(ClassroomMode::Departmentalized);
  for (const ScheduleType type : all_schedule_types()) {
    long long expected = 2000;
    if (type == ScheduleType::T4) expected = 7200;
    if (type == ScheduleType::T10) expected = 9600;
    if (type == ScheduleType::T12) expected = 3000;
    CHECK(dep.type_replications(type) == expected);
  }
  CHECK(dep.total_replications() == 9 * 2000 + 7200 + 9600 + 3000);
}

TEST_CASE("per-case replication counts match the simulation tables") {
  CHECK(replications_per_case(ScheduleType::T4, ClassroomMode::SelfContained) ==
        200);
  CHECK(replications_per_case(ScheduleType::T10,
                              ClassroomMode::SelfContained) == 75);
  CHECK(replications_per_case(ScheduleType::T12,
                              ClassroomMode::SelfContained) == 600);
  CHECK(replications_per_case(ScheduleType::T4,
                              ClassroomMode::Departmentalized) == 20);
  CHECK(replications_per_case(ScheduleType::T10,
                              ClassroomMode::Departmentalized) == 10);
  CHECK(replications_per_case(ScheduleType::T12,
                              ClassroomMode::Departmentalized) == 25);
  CHECK(replications_per_case(ScheduleType::T5,
                              ClassroomMode::Departmentalized) == 100);
}

TEST_CASE("ventilation sweep uses the base schedule and four rates") {
  for (const ClassroomMode mode :
       {ClassroomMode::SelfContained, ClassroomMode::Departmentalized}) {
    const ExperimentPlan plan = preset_experiment1(mode);
    std::set<double> rates;
    for (const auto& c : plan.cases) {
      CHECK(c.type == ScheduleType::T1);
      rates.insert(c.ventilation);
    }
    CHECK(rates == std::set<double>{450.0, 900.0, 1350.0, 1800.0});
    const long long per_rate = plan.total_replications() / 4;
    CHECK(per_rate == (mode == ClassroomMode::SelfContained ? 3600 : 2000));
  }
}

TEST_CASE("outputs are invariant to parallelism and repeatable") {
  ExperimentPlan plan = preset_experiment2(ClassroomMode::SelfContained);
  std::erase_if(plan.cases, [](const PlanCase& c) {
    return c.type != ScheduleType::T11;
  });
  for (auto& c : plan.cases) c.replications = 300;

  RunOptions options;
  options.master_seed = 77;
  options.parallelism = 1;
  const std::string serial = csv_fingerprint(execute(plan, options));

  options.parallelism = 8;
  const std::string parallel = csv_fingerprint(execute(plan, options));
  CHECK(serial == parallel);

  const std::string repeat = csv_fingerprint(execute(plan, options));
  CHECK(parallel == repeat);

  options.master_seed = 78;
  CHECK(csv_fingerprint(execute(plan, options)) != serial);
}

TEST_CASE("run writes the result files into a fresh directory") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / "svis_test_out" / "nested" / "run1";
  fs::remove_all(dir.parent_path().parent_path());

  ExperimentPlan plan = preset_experiment2(ClassroomMode::SelfContained);
  std::erase_if(plan.cases, [](const PlanCase& c) {
    return c.type != ScheduleType::T12;
  });
  for (auto& c : plan.cases) c.replications = 5;

  RunOptions options;
  options.master_seed = 9;
  options.output_dir = dir.string();
  options.trace = true;
  CHECK(run(plan, options) == 0);
  CHECK(fs::exists(dir / "peaks.csv"));
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "histogram.csv"));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "trace.txt"));

  // peaks.csv holds one line per replication plus the header.
  std::ifstream peaks(dir / "peaks.csv");
  std::string line;
  int lines = 0;
  while (std::getline(peaks, line)) ++lines;
  CHECK(lines == 1 + 6 * 5);

  fs::remove_all(dir.parent_path().parent_path());
}

TEST_CASE("run reports unusable output locations") {
  ExperimentPlan plan = preset_experiment2(ClassroomMode::SelfContained);
  std::erase_if(plan.cases, [](const PlanCase& c) {
    return c.type != ScheduleType::T12;
  });
  for (auto& c : plan.cases) c.replications = 1;

  namespace fs = std::filesystem;
  const fs::path blocker = fs::temp_directory_path() / "svis_blocker_file";
  std::ofstream(blocker) << "x";

  RunOptions options;
  options.output_dir = (blocker / "out").string();  // parent is a file
  CHECK(run(plan, options) != 0);
  fs::remove(blocker);
}

TEST_CASE("invalid configuration is rejected with exit code 1") {
  ExperimentPlan plan = preset_experiment2(ClassroomMode::SelfContained);
  std::erase_if(plan.cases, [](const PlanCase& c) {
    return c.type != ScheduleType::T12;
  });
  RunOptions options;
  SchoolConfig school = default_school(ClassroomMode::SelfContained);
  school.classroom.volume = -1.0;
  options.school_override = school;
  CHECK(run(plan, options) == 1);
}
