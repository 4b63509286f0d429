#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "svis/engine.hpp"
#include "svis/scheduling.hpp"

namespace svis {

// Five-number summary plus mean of peak infections across replications.
struct PeakSummary {
  int n = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

PeakSummary summarize_peaks(const std::vector<int>& peaks);
PeakSummary summarize_peaks(const std::vector<ReplicationResult>& results);

// Bin 0 holds exactly-zero probabilities; bins 1..6 are the half-open
// upper-inclusive bands (0,2%] .. (10,12%]; bin 7 collects everything above.
constexpr int kHistogramBins = 8;

int histogram_bin(double probability);
const char* histogram_bin_label(int bin);

struct ProbabilityHistogram {
  std::array<std::array<double, kHistogramBins>, 7> fraction{};  // [dow][bin]
};

// Streams classroom-cell probabilities so full replication results never
// need to be retained; merge order does not affect the totals.
class HistogramAccumulator {
 public:
  void add(const ReplicationResult& result, int week);
  void merge(const HistogramAccumulator& other);
  ProbabilityHistogram finalize() const;
  std::uint64_t cells(int dow) const;

 private:
  std::array<std::array<std::uint64_t, kHistogramBins>, 7> counts_{};
};

ProbabilityHistogram histogram(const std::vector<ReplicationResult>& results,
                               int week);

// Schedule-property table for the face-to-face / infection trade-off.
struct ScheduleReportRow {
  ScheduleType type;
  ClassroomMode mode;
  double face_to_face_pct;
  double peers_met_pct;
};

std::vector<ScheduleReportRow> face_to_face_report(const SchoolConfig& config,
                                                   int weeks);

// CSV rows written by the experiment runner.
struct PeakRow {
  ScheduleType type;
  ClassroomMode mode;
  double ventilation;
  int pattern_id;
  int room_pattern_id;
  int replication;
  std::uint64_t seed;
  int peak;
  int total_infected;
  int peak_day;
};

struct SummaryRow {
  ScheduleType type;
  ClassroomMode mode;
  double ventilation;
  PeakSummary summary;
  double face_to_face_pct;
};

struct HistogramRow {
  ScheduleType type;
  ClassroomMode mode;
  double ventilation;
  int day;
  int bin;
  double fraction;
};

void write_peaks_csv(std::ostream& out, const std::vector<PeakRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_histogram_csv(std::ostream& out,
                         const std::vector<HistogramRow>& rows);

}  // namespace svis
