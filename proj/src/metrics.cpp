#include "svis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace svis {

namespace {

// Linear interpolation between order statistics.
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

PeakSummary summarize_peaks(const std::vector<int>& peaks) {
  if (peaks.empty())
    throw std::invalid_argument("summarize_peaks: empty input");
  std::vector<double> sorted(peaks.begin(), peaks.end());
  std::sort(sorted.begin(), sorted.end());
  PeakSummary s;
  s.n = static_cast<int>(sorted.size());
  s.min = sorted.front();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.max = sorted.back();
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
           static_cast<double>(sorted.size());
  return s;
}

PeakSummary summarize_peaks(const std::vector<ReplicationResult>& results) {
  std::vector<int> peaks;
  peaks.reserve(results.size());
  for (const auto& r : results) peaks.push_back(r.peak_infected);
  return summarize_peaks(peaks);
}

int histogram_bin(double probability) {
  if (probability == 0.0) return 0;
  const double pct = probability * 100.0;
  const int bin = static_cast<int>(std::ceil(pct / 2.0));
  return std::clamp(bin, 1, kHistogramBins - 1);
}

const char* histogram_bin_label(int bin) {
  static const char* labels[kHistogramBins] = {
      "0", "0-2%", "2-4%", "4-6%", "6-8%", "8-10%", "10-12%", ">12%"};
  return labels[bin];
}

void HistogramAccumulator::add(const ReplicationResult& result, int week) {
  for (int dow = 0; dow < 7; ++dow) {
    const int day = week * 7 + dow;
    for (int room = 0; room < result.rooms; ++room)
      for (int period = 0; period < result.periods; ++period)
        ++counts_[dow][histogram_bin(result.cell(day, room, period))];
  }
}

void HistogramAccumulator::merge(const HistogramAccumulator& other) {
  for (int dow = 0; dow < 7; ++dow)
    for (int bin = 0; bin < kHistogramBins; ++bin)
      counts_[dow][bin] += other.counts_[dow][bin];
}

std::uint64_t HistogramAccumulator::cells(int dow) const {
  std::uint64_t total = 0;
  for (int bin = 0; bin < kHistogramBins; ++bin) total += counts_[dow][bin];
  return total;
}

ProbabilityHistogram HistogramAccumulator::finalize() const {
  ProbabilityHistogram histogram;
  for (int dow = 0; dow < 7; ++dow) {
    const auto total = cells(dow);
    if (total == 0) continue;
    for (int bin = 0; bin < kHistogramBins; ++bin)
      histogram.fraction[dow][bin] = static_cast<double>(counts_[dow][bin]) /
                                     static_cast<double>(total);
  }
  return histogram;
}

ProbabilityHistogram histogram(const std::vector<ReplicationResult>& results,
                               int week) {
  HistogramAccumulator acc;
  for (const auto& result : results) acc.add(result, week);
  return acc.finalize();
}

std::vector<ScheduleReportRow> face_to_face_report(const SchoolConfig& config,
                                                   int weeks) {
  std::vector<ScheduleReportRow> rows;
  const RoomPattern rooms = generate_room_pattern(config, 0);
  for (const ScheduleType type : all_schedule_types()) {
    const auto patterns = enumerate_patterns(type);
    const Timetable tt =
        build_timetable(type, config, patterns.front(), rooms);
    rows.push_back({type, config.classroom_mode,
                    face_to_face_percentage(tt, config, weeks),
                    peer_exposure_percentage(tt, tt.groups)});
  }
  return rows;
}

namespace {

void write_double(std::ostream& out, double value) {
  const auto precision = out.precision();
  out.precision(std::numeric_limits<double>::max_digits10);
  out << value;
  out.precision(precision);
}

}  // namespace

void write_peaks_csv(std::ostream& out, const std::vector<PeakRow>& rows) {
  out << "type,mode,ventilation,pattern_id,room_pattern_id,replication,seed,"
         "peak,total_infected,peak_day\n";
  for (const auto& row : rows) {
    out << schedule_type_roman(row.type) << ',' << mode_name(row.mode) << ',';
    write_double(out, row.ventilation);
    out << ',' << row.pattern_id << ',' << row.room_pattern_id << ','
        << row.replication << ',' << row.seed << ',' << row.peak << ','
        << row.total_infected << ',' << row.peak_day << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "type,mode,ventilation,n,min,q1,median,q3,max,mean,f2f_pct\n";
  for (const auto& row : rows) {
    out << schedule_type_roman(row.type) << ',' << mode_name(row.mode) << ',';
    write_double(out, row.ventilation);
    out << ',' << row.summary.n;
    for (const double v : {row.summary.min, row.summary.q1, row.summary.median,
                           row.summary.q3, row.summary.max, row.summary.mean,
                           row.face_to_face_pct}) {
      out << ',';
      write_double(out, v);
    }
    out << '\n';
  }
}

void write_histogram_csv(std::ostream& out,
                         const std::vector<HistogramRow>& rows) {
  out << "type,mode,ventilation,day,bin,fraction\n";
  for (const auto& row : rows) {
    out << schedule_type_roman(row.type) << ',' << mode_name(row.mode) << ',';
    write_double(out, row.ventilation);
    out << ',' << row.day << ',' << histogram_bin_label(row.bin) << ',';
    write_double(out, row.fraction);
    out << '\n';
  }
}

}  // namespace svis
