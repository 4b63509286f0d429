#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "svis/model.hpp"
#include "svis/random.hpp"

namespace svis {

// The twelve schedule types (i)-(xii).
enum class ScheduleType { T1, T2, T3, T4, T5, T6, T7, T8, T9, T10, T11, T12 };

constexpr int kScheduleTypeCount = 12;

std::vector<ScheduleType> all_schedule_types();
const char* schedule_type_roman(ScheduleType type);  // "i".."xii"
std::optional<ScheduleType> parse_schedule_type(const std::string& text);

// Effective cohort count used to build the timetable.
int schedule_group_count(ScheduleType type);
int schedule_cycle_weeks(ScheduleType type);

// Reference percentages for reporting and checks.
struct SchedulePercentages {
  double face_to_face;
  double peers_met;
};
SchedulePercentages schedule_reference_percentages(ScheduleType type);

// Contiguous id blocks of equal size, in group order A, B, C, D.
struct GroupAssignment {
  int num_students = 0;
  int num_groups = 1;

  int group_size() const { return num_students / num_groups; }
  int group_of(int student) const { return student / group_size(); }
  int first_student(int group) const { return group * group_size(); }
};

// Which groups take face-to-face lessons in each week of the cycle.
struct FaceToFacePattern {
  ScheduleType type = ScheduleType::T1;
  int pattern_id = 0;
  int cycle_weeks = 1;
  std::vector<unsigned> week_mask;  // bit g set when group g attends that week

  bool group_on(int week, int group) const {
    return (week_mask[week] >> group) & 1u;
  }
};

// All valid patterns for the type. Types (iv), (x), (xii) enumerate their
// rotation variants (18 / 48 / 6); every other type has one canonical pattern.
std::vector<FaceToFacePattern> enumerate_patterns(ScheduleType type);

// Room of each student per (day-of-week, period) slot; fixed across weeks.
struct RoomPattern {
  int rooms = 1;
  int periods = 7;
  int num_students = 0;
  std::vector<std::int16_t> assignment;  // [dow][period][student]; empty => room 0

  int room_of(int dow, int period, int student) const {
    if (assignment.empty()) return 0;
    return assignment[(static_cast<std::size_t>(dow) * periods + period) *
                          num_students +
                      student];
  }
};

// Departmentalized: seeded random partition of all students into equal rooms
// for every (day-of-week, period) slot. Self-contained: everyone in room 0.
RoomPattern generate_room_pattern(const SchoolConfig& config,
                                  std::uint64_t seed);

// Per-student attendance over one repeating cycle, plus the room map.
struct Timetable {
  ScheduleType type = ScheduleType::T1;
  int pattern_id = 0;
  int cycle_days = 7;
  int periods = 7;
  int num_students = 0;
  GroupAssignment groups;
  RoomPattern rooms;
  std::vector<std::uint8_t> attend;  // [student][cycle day][period]

  bool attends(int student, int day, int period) const {
    const int d = day % cycle_days;
    return attend[(static_cast<std::size_t>(student) * cycle_days + d) *
                      periods +
                  period] != 0;
  }

  // -1 when the student has no lesson in that slot.
  int room_for(int student, int day, int period) const {
    if (!attends(student, day, period)) return -1;
    return rooms.room_of(day % 7, period, student);
  }
};

Timetable build_timetable(ScheduleType type, const SchoolConfig& config,
                          const FaceToFacePattern& pattern,
                          const RoomPattern& room_pattern);

// Scheduled lesson slots over the horizon relative to the type (i) baseline.
double face_to_face_percentage(const Timetable& timetable,
                               const SchoolConfig& config, int weeks);

// Fraction of the student body (own group included) that a representative
// student shares at least one lesson slot with over one cycle.
double peer_exposure_percentage(const Timetable& timetable,
                                const GroupAssignment& groups);

// Audit dump: one row per student-day-period over the given horizon.
void export_timetable(std::ostream& out, const Timetable& timetable,
                      int weeks);

}  // namespace svis
