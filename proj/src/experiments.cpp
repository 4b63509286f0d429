#include "svis/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "svis/engine.hpp"

namespace svis {

long long ExperimentPlan::total_replications() const {
  long long total = 0;
  for (const auto& c : cases) total += c.replications;
  return total;
}

long long ExperimentPlan::type_replications(ScheduleType type) const {
  long long total = 0;
  for (const auto& c : cases)
    if (c.type == type) total += c.replications;
  return total;
}

int replications_per_case(ScheduleType type, ClassroomMode mode) {
  const bool self = mode == ClassroomMode::SelfContained;
  switch (type) {
    case ScheduleType::T4: return self ? 200 : 20;
    case ScheduleType::T10: return self ? 75 : 10;
    case ScheduleType::T12: return self ? 600 : 25;
    default: return self ? 3600 : 100;
  }
}

namespace {

constexpr double kVentilationBaseline = 450.0;

void append_type_cases(ExperimentPlan& plan, ScheduleType type,
                       ClassroomMode mode, double ventilation) {
  const int room_patterns = mode == ClassroomMode::SelfContained ? 1 : 20;
  const int pattern_count =
      static_cast<int>(enumerate_patterns(type).size());
  const int reps = replications_per_case(type, mode);
  for (int pattern = 0; pattern < pattern_count; ++pattern)
    for (int room = 0; room < room_patterns; ++room)
      plan.cases.push_back({type, mode, pattern, room, ventilation, reps});
}

}  // namespace

ExperimentPlan preset_experiment1(ClassroomMode mode) {
  ExperimentPlan plan;
  plan.experiment = 1;
  plan.mode = mode;
  for (const double q : {450.0, 900.0, 1350.0, 1800.0})
    append_type_cases(plan, ScheduleType::T1, mode, q);
  return plan;
}

ExperimentPlan preset_experiment2(ClassroomMode mode) {
  ExperimentPlan plan;
  plan.experiment = 2;
  plan.mode = mode;
  for (const ScheduleType type : all_schedule_types())
    append_type_cases(plan, type, mode, kVentilationBaseline);
  return plan;
}

int effective_parallelism(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SVIS_PARALLELISM")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t count, int parallelism,
                  const std::function<void(std::size_t, int)>& fn) {
  const int workers =
      static_cast<int>(std::min<std::size_t>(count, effective_parallelism(parallelism)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (;;) {
          const std::size_t task = next.fetch_add(1);
          if (task >= count) break;
          fn(task, w);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

struct TaskSpec {
  std::size_t case_index;
  int rep_begin;
  int rep_count;
};

using HistKey = std::pair<int, long long>;  // (type index, milli-Q)

HistKey hist_key(const PlanCase& c) {
  return {static_cast<int>(c.type),
          static_cast<long long>(c.ventilation * 1000.0 + 0.5)};
}

std::uint64_t room_seed(std::uint64_t master_seed, int room_pattern_id) {
  return mix64(master_seed) ^
         (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(room_pattern_id + 1));
}

std::uint64_t stream_key(const PlanCase& c, int replication) {
  const std::uint64_t pattern_key =
      static_cast<std::uint64_t>(c.pattern_id) * 1000ULL +
      static_cast<std::uint64_t>(c.room_pattern_id);
  return (pattern_key << 32) | static_cast<std::uint64_t>(replication);
}

}  // namespace

RunOutputs execute(const ExperimentPlan& plan, const RunOptions& options) {
  SchoolConfig base_school =
      options.school_override.value_or(default_school(plan.mode));
  base_school.classroom_mode = plan.mode;
  {
    const auto report = validate(base_school, options.params);
    if (!report.empty())
      throw std::invalid_argument("invalid configuration: " + report.front());
  }

  // Shared immutable inputs.
  std::map<int, std::vector<FaceToFacePattern>> patterns;
  int max_room_pattern = 0;
  for (const auto& c : plan.cases) {
    const int t = static_cast<int>(c.type);
    if (!patterns.count(t)) patterns[t] = enumerate_patterns(c.type);
    max_room_pattern = std::max(max_room_pattern, c.room_pattern_id);
  }
  std::vector<RoomPattern> room_patterns;
  for (int room = 0; room <= max_room_pattern; ++room)
    room_patterns.push_back(generate_room_pattern(
        base_school, room_seed(options.master_seed, room)));

  // Chunk large cases so single-case plans still parallelize.
  constexpr int kChunk = 256;
  std::vector<TaskSpec> tasks;
  for (std::size_t ci = 0; ci < plan.cases.size(); ++ci) {
    const int reps = plan.cases[ci].replications;
    for (int begin = 0; begin < reps; begin += kChunk)
      tasks.push_back({ci, begin, std::min(kChunk, reps - begin)});
  }

  const int workers = effective_parallelism(options.parallelism);
  struct WorkerState {
    std::vector<std::pair<std::uint64_t, PeakRow>> peaks;
    std::map<HistKey, HistogramAccumulator> histograms;
    std::string trace_text;
  };
  std::vector<WorkerState> states(std::max(workers, 1));

  parallel_for(tasks.size(), options.parallelism, [&](std::size_t ti, int w) {
    const TaskSpec& task = tasks[ti];
    const PlanCase& c = plan.cases[task.case_index];
    WorkerState& state = states[w];

    SchoolConfig school = base_school;
    if (c.ventilation != school.classroom.clean_air_ventilation_rate())
      school.classroom.ventilation_override = c.ventilation;

    const Timetable timetable =
        build_timetable(c.type, school,
                        patterns.at(static_cast<int>(c.type))[c.pattern_id],
                        room_patterns[c.room_pattern_id]);
    const LessonPlan lesson_plan(timetable);
    HistogramAccumulator& acc = state.histograms[hist_key(c)];

    for (int rep = task.rep_begin; rep < task.rep_begin + task.rep_count;
         ++rep) {
      ReplicationConfig rc;
      rc.school = school;
      rc.params = options.params;
      rc.master_seed = options.master_seed;
      rc.stream_key = stream_key(c, rep);
      rc.initial_infections = {{timetable.groups.first_student(0), 0}};
      std::ostringstream trace;
      const bool want_trace = options.trace && task.case_index == 0 && rep == 0;
      if (want_trace) rc.trace = &trace;

      const ReplicationResult result = run_replication(rc, lesson_plan);
      acc.add(result, 0);
      const std::uint64_t order =
          static_cast<std::uint64_t>(task.case_index) * 10000000ULL +
          static_cast<std::uint64_t>(rep);
      state.peaks.emplace_back(
          order, PeakRow{c.type, c.mode, c.ventilation, c.pattern_id,
                         c.room_pattern_id, rep, rc.stream_key,
                         result.peak_infected, result.total_ever_infected,
                         result.peak_day});
      if (want_trace) state.trace_text = trace.str();
    }
  });

  // Deterministic reduction.
  RunOutputs outputs;
  std::vector<std::pair<std::uint64_t, PeakRow>> ordered;
  std::map<HistKey, HistogramAccumulator> merged;
  for (auto& state : states) {
    ordered.insert(ordered.end(), state.peaks.begin(), state.peaks.end());
    for (const auto& [key, acc] : state.histograms) merged[key].merge(acc);
    if (!state.trace_text.empty()) outputs.trace_text = state.trace_text;
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  outputs.peaks.reserve(ordered.size());
  for (auto& [key, row] : ordered) outputs.peaks.push_back(row);

  // Per (type, ventilation) summaries in case order.
  std::vector<HistKey> group_order;
  std::map<HistKey, std::vector<int>> group_peaks;
  for (const auto& row : outputs.peaks) {
    const HistKey key{static_cast<int>(row.type),
                      static_cast<long long>(row.ventilation * 1000.0 + 0.5)};
    if (!group_peaks.count(key)) group_order.push_back(key);
    group_peaks[key].push_back(row.peak);
  }
  std::map<int, double> f2f_by_type;
  for (const auto& key : group_order) {
    const auto type = static_cast<ScheduleType>(key.first);
    if (!f2f_by_type.count(key.first)) {
      const Timetable tt = build_timetable(
          type, base_school, patterns.at(key.first).front(), room_patterns[0]);
      f2f_by_type[key.first] =
          face_to_face_percentage(tt, base_school, options.params.horizon_weeks);
    }
    outputs.summary.push_back({type, plan.mode,
                               static_cast<double>(key.second) / 1000.0,
                               summarize_peaks(group_peaks[key]),
                               f2f_by_type[key.first]});
    const ProbabilityHistogram hist = merged[key].finalize();
    for (int dow = 0; dow < 7; ++dow)
      for (int bin = 0; bin < kHistogramBins; ++bin)
        outputs.histograms.push_back(
            {type, plan.mode, static_cast<double>(key.second) / 1000.0, dow,
             bin, hist.fraction[dow][bin]});
  }
  return outputs;
}

int run(const ExperimentPlan& plan, const RunOptions& options) {
  namespace fs = std::filesystem;
  const auto started = std::chrono::steady_clock::now();

  RunOutputs outputs;
  try {
    outputs = execute(plan, options);
  } catch (const std::invalid_argument& e) {
    std::cerr << "svis: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "svis: " << e.what() << '\n';
    return 2;
  }

  const fs::path dir(options.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    std::cerr << "svis: cannot create output directory " << dir.string()
              << '\n';
    return 2;
  }

  const auto write_file = [&](const char* name, const auto& writer) -> bool {
    const fs::path path = dir / name;
    std::ofstream out(path);
    writer(out);
    out.flush();
    if (!out) {
      std::cerr << "svis: cannot write " << path.string() << '\n';
      return false;
    }
    return true;
  };

  bool ok = write_file("peaks.csv", [&](std::ostream& out) {
    write_peaks_csv(out, outputs.peaks);
  });
  ok = ok && write_file("summary.csv", [&](std::ostream& out) {
    write_summary_csv(out, outputs.summary);
  });
  ok = ok && write_file("histogram.csv", [&](std::ostream& out) {
    write_histogram_csv(out, outputs.histograms);
  });
  if (options.trace && !outputs.trace_text.empty()) {
    ok = ok && write_file("trace.txt", [&](std::ostream& out) {
      out << outputs.trace_text;
    });
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  ok = ok && write_file("manifest.json", [&](std::ostream& out) {
    nlohmann::json manifest{
        {"version", "0.1.0"},
        {"experiment", plan.experiment},
        {"mode", mode_name(plan.mode)},
        {"master_seed", options.master_seed},
        {"parallelism", effective_parallelism(options.parallelism)},
        {"cases", plan.cases.size()},
        {"total_replications", plan.total_replications()},
        {"params", options.params},
        {"school", options.school_override.value_or(default_school(plan.mode))},
        {"wall_time_seconds", seconds}};
    out << manifest.dump(2) << '\n';
  });
  return ok ? 0 : 2;
}

}  // namespace svis
