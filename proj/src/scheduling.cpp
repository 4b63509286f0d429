#include "svis/scheduling.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

namespace svis {

std::vector<ScheduleType> all_schedule_types() {
  std::vector<ScheduleType> types;
  for (int i = 0; i < kScheduleTypeCount; ++i)
    types.push_back(static_cast<ScheduleType>(i));
  return types;
}

const char* schedule_type_roman(ScheduleType type) {
  static const char* names[] = {"i",  "ii",  "iii", "iv", "v",  "vi",
                                "vii", "viii", "ix",  "x",  "xi", "xii"};
  return names[static_cast<int>(type)];
}

std::optional<ScheduleType> parse_schedule_type(const std::string& text) {
  for (int i = 0; i < kScheduleTypeCount; ++i) {
    const auto type = static_cast<ScheduleType>(i);
    if (text == "T" + std::to_string(i + 1) ||
        text == schedule_type_roman(type))
      return type;
  }
  return std::nullopt;
}

int schedule_group_count(ScheduleType type) {
  switch (type) {
    case ScheduleType::T1:
    case ScheduleType::T2:
    case ScheduleType::T3:  // single cohort: all on for 3 weeks, 1 week off
    case ScheduleType::T5:
    case ScheduleType::T11:
      return 1;
    case ScheduleType::T6:
    case ScheduleType::T7:
    case ScheduleType::T8:
    case ScheduleType::T9:
      return 2;
    case ScheduleType::T4:
    case ScheduleType::T10:
    case ScheduleType::T12:
      return 4;
  }
  return 1;
}

int schedule_cycle_weeks(ScheduleType type) {
  switch (type) {
    case ScheduleType::T1:
    case ScheduleType::T2:
      return 1;
    case ScheduleType::T5:
    case ScheduleType::T6:
    case ScheduleType::T7:
    case ScheduleType::T8:
    case ScheduleType::T9:
      return 2;
    case ScheduleType::T3:
    case ScheduleType::T4:
    case ScheduleType::T11:
    case ScheduleType::T12:
      return 4;
    case ScheduleType::T10:
      return 6;
  }
  return 1;
}

SchedulePercentages schedule_reference_percentages(ScheduleType type) {
  switch (type) {
    case ScheduleType::T1: return {100.0, 100.0};
    case ScheduleType::T2: return {100.0, 100.0};
    case ScheduleType::T3: return {75.0, 100.0};
    case ScheduleType::T4: return {75.0, 100.0};
    case ScheduleType::T5: return {50.0, 100.0};
    case ScheduleType::T6: return {50.0, 50.0};
    case ScheduleType::T7: return {50.0, 50.0};
    case ScheduleType::T8: return {50.0, 50.0};
    case ScheduleType::T9: return {50.0, 50.0};
    case ScheduleType::T10: return {50.0, 100.0};
    case ScheduleType::T11: return {25.0, 100.0};
    case ScheduleType::T12: return {25.0, 25.0};
  }
  return {0.0, 0.0};
}

namespace {

FaceToFacePattern make_pattern(ScheduleType type, int id,
                               std::vector<unsigned> masks) {
  FaceToFacePattern p;
  p.type = type;
  p.pattern_id = id;
  p.cycle_weeks = static_cast<int>(masks.size());
  p.week_mask = std::move(masks);
  return p;
}

// Group pairs in the order (A,B), (A,C), (A,D), (B,C), (B,D), (C,D).
constexpr std::array<unsigned, 6> kPairMasks = {0b0011, 0b0101, 0b1001,
                                                0b0110, 0b1010, 0b1100};

bool group_on_three_straight_cyclic(const std::vector<unsigned>& masks) {
  const int n = static_cast<int>(masks.size());
  for (int g = 0; g < 4; ++g) {
    for (int w = 0; w < n; ++w) {
      const bool a = (masks[w] >> g) & 1u;
      const bool b = (masks[(w + 1) % n] >> g) & 1u;
      const bool c = (masks[(w + 2) % n] >> g) & 1u;
      if (a && b && c) return true;
    }
  }
  return false;
}

void enumerate_pair_weeks(std::vector<unsigned>& weeks, unsigned used,
                          std::vector<FaceToFacePattern>& out) {
  const int w = static_cast<int>(weeks.size());
  if (w == 6) {
    if (!group_on_three_straight_cyclic(weeks))
      out.push_back(make_pattern(ScheduleType::T10,
                                 static_cast<int>(out.size()), weeks));
    return;
  }
  for (int i = 0; i < 6; ++i) {
    if (used & (1u << i)) continue;
    if (w == 0 && !(kPairMasks[i] & 1u)) continue;  // Group A opens the cycle
    weeks.push_back(kPairMasks[i]);
    enumerate_pair_weeks(weeks, used | (1u << i), out);
    weeks.pop_back();
  }
}

}  // namespace

std::vector<FaceToFacePattern> enumerate_patterns(ScheduleType type) {
  std::vector<FaceToFacePattern> out;
  switch (type) {
    case ScheduleType::T1:
    case ScheduleType::T2:
      out.push_back(make_pattern(type, 0, {0b1}));
      break;
    case ScheduleType::T3:
      out.push_back(make_pattern(type, 0, {1, 1, 1, 0}));
      break;
    case ScheduleType::T4: {
      // One group off per week over a 4-week cycle, Group A on in week 1.
      std::array<int, 4> off = {0, 1, 2, 3};
      do {
        if (off[0] == 0) continue;
        std::vector<unsigned> masks;
        for (int w = 0; w < 4; ++w) masks.push_back(0b1111u & ~(1u << off[w]));
        out.push_back(make_pattern(type, static_cast<int>(out.size()), masks));
      } while (std::next_permutation(off.begin(), off.end()));
      break;
    }
    case ScheduleType::T5:
      out.push_back(make_pattern(type, 0, {1, 0}));
      break;
    case ScheduleType::T6:
      out.push_back(make_pattern(type, 0, {0b01, 0b10}));
      break;
    case ScheduleType::T7:
    case ScheduleType::T8:
    case ScheduleType::T9:
      // Both groups are active every week; the sub-week cadence lives in
      // build_timetable and alternates with week parity.
      out.push_back(make_pattern(type, 0, {0b11, 0b11}));
      break;
    case ScheduleType::T10: {
      std::vector<unsigned> weeks;
      enumerate_pair_weeks(weeks, 0u, out);
      break;
    }
    case ScheduleType::T11:
      out.push_back(make_pattern(type, 0, {1, 0, 0, 0}));
      break;
    case ScheduleType::T12: {
      // One group per week over a 4-week cycle, Group A first.
      std::array<int, 3> rest = {1, 2, 3};
      do {
        std::vector<unsigned> masks = {0b0001};
        for (const int g : rest) masks.push_back(1u << g);
        out.push_back(make_pattern(type, static_cast<int>(out.size()), masks));
      } while (std::next_permutation(rest.begin(), rest.end()));
      break;
    }
  }
  return out;
}

RoomPattern generate_room_pattern(const SchoolConfig& config,
                                  std::uint64_t seed) {
  RoomPattern pattern;
  pattern.rooms = config.classrooms_per_lesson;
  pattern.periods = config.lessons_per_day;
  pattern.num_students = config.total_students;
  if (config.classrooms_per_lesson <= 1) return pattern;

  const int n = config.total_students;
  const int per_room = config.students_per_room();
  RandomStream rng = derive_substream(seed, 0x526f6f6dULL);  // "Room"
  pattern.assignment.resize(static_cast<std::size_t>(7) * pattern.periods * n);
  std::vector<int> ids(n);
  for (int dow = 0; dow < 7; ++dow) {
    for (int period = 0; period < pattern.periods; ++period) {
      std::iota(ids.begin(), ids.end(), 0);
      for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(
            rng.uniform_below(static_cast<std::uint32_t>(i + 1)));
        std::swap(ids[i], ids[j]);
      }
      const std::size_t base =
          (static_cast<std::size_t>(dow) * pattern.periods + period) *
          static_cast<std::size_t>(n);
      for (int i = 0; i < n; ++i)
        pattern.assignment[base + ids[i]] =
            static_cast<std::int16_t>(i / per_room);
    }
  }
  return pattern;
}

namespace {

// Scheduled-attendance rule for one slot. `week` is the week inside the
// pattern cycle; `dow` is 0 (Monday) .. 6.
bool slot_on(ScheduleType type, const FaceToFacePattern& pattern, int group,
             int week, int dow, int period, int periods_per_day) {
  if (type == ScheduleType::T2) {
    // Six active days: 6 lessons Mon-Fri, 5 on Saturday.
    if (dow == 6) return false;
    if (dow == 5) return period < periods_per_day - 2;
    return period < periods_per_day - 1;
  }
  if (dow >= 5) return false;
  const bool am = period < (periods_per_day + 1) / 2;
  switch (type) {
    case ScheduleType::T1:
      return true;
    case ScheduleType::T7: {
      // Lead group: Mon, Tue, Wed-AM; other: Wed-PM, Thu, Fri. Swap weekly.
      const int lead = week % 2;
      if (group == lead) return dow < 2 || (dow == 2 && am);
      return (dow == 2 && !am) || dow > 2;
    }
    case ScheduleType::T8: {
      // Alternating single days; the fifth day rotates between groups.
      const int lead = week % 2;
      if (group == lead) return dow % 2 == 0;
      return dow % 2 == 1;
    }
    case ScheduleType::T9: {
      // Half-days: lead group takes mornings, the other afternoons.
      const int lead = week % 2;
      return (group == lead) == am;
    }
    default:
      return pattern.group_on(week % pattern.cycle_weeks, group);
  }
}

}  // namespace

Timetable build_timetable(ScheduleType type, const SchoolConfig& config,
                          const FaceToFacePattern& pattern,
                          const RoomPattern& room_pattern) {
  if (pattern.type != type)
    throw std::invalid_argument("build_timetable: pattern/type mismatch");
  if (room_pattern.num_students != config.total_students ||
      room_pattern.rooms != config.classrooms_per_lesson)
    throw std::invalid_argument("build_timetable: room pattern/config mismatch");

  Timetable tt;
  tt.type = type;
  tt.pattern_id = pattern.pattern_id;
  tt.periods = config.lessons_per_day;
  tt.num_students = config.total_students;
  tt.groups = GroupAssignment{config.total_students,
                              schedule_group_count(type)};
  tt.rooms = room_pattern;

  const int cycle_weeks = std::max(pattern.cycle_weeks,
                                   schedule_cycle_weeks(type));
  tt.cycle_days = cycle_weeks * 7;
  tt.attend.assign(static_cast<std::size_t>(tt.num_students) * tt.cycle_days *
                       tt.periods,
                   0);

  for (int s = 0; s < tt.num_students; ++s) {
    const int g = tt.groups.group_of(s);
    for (int d = 0; d < tt.cycle_days; ++d) {
      const int week = d / 7;
      const int dow = d % 7;
      for (int p = 0; p < tt.periods; ++p) {
        if (slot_on(type, pattern, g, week, dow, p, tt.periods))
          tt.attend[(static_cast<std::size_t>(s) * tt.cycle_days + d) *
                        tt.periods +
                    p] = 1;
      }
    }
  }
  return tt;
}

double face_to_face_percentage(const Timetable& timetable,
                               const SchoolConfig& config, int weeks) {
  const int horizon_days = weeks * 7;
  long long slots = 0;
  for (int s = 0; s < timetable.num_students; ++s)
    for (int d = 0; d < horizon_days; ++d)
      for (int p = 0; p < timetable.periods; ++p)
        if (timetable.attends(s, d, p)) ++slots;
  // Type (i) baseline: five lesson days a week, every period, every student.
  const long long baseline = static_cast<long long>(config.total_students) *
                             weeks * 5 * config.lessons_per_day;
  return 100.0 * static_cast<double>(slots) / static_cast<double>(baseline);
}

double peer_exposure_percentage(const Timetable& timetable,
                                const GroupAssignment& groups) {
  // Attendance depends only on the group, so check group representatives.
  const int rep = groups.first_student(0);
  int met_students = 0;
  for (int g = 0; g < groups.num_groups; ++g) {
    const int other = groups.first_student(g);
    bool meets = false;
    for (int d = 0; d < timetable.cycle_days && !meets; ++d)
      for (int p = 0; p < timetable.periods && !meets; ++p)
        if (timetable.attends(rep, d, p) && timetable.attends(other, d, p))
          meets = true;
    if (meets) met_students += groups.group_size();
  }
  return 100.0 * met_students / groups.num_students;
}

void export_timetable(std::ostream& out, const Timetable& timetable,
                      int weeks) {
  out << "student,day,period,room\n";
  const int horizon_days = weeks * 7;
  for (int s = 0; s < timetable.num_students; ++s)
    for (int d = 0; d < horizon_days; ++d)
      for (int p = 0; p < timetable.periods; ++p) {
        const int room = timetable.room_for(s, d, p);
        out << s << ',' << d << ',' << p << ',';
        if (room < 0)
          out << "off";
        else
          out << room;
        out << '\n';
      }
}

}  // namespace svis
