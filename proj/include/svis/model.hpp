#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace svis {

enum class InfectionPhase {
  Susceptible,
  Exposed,
  InfectiousExposed,
  Infectious,
  Asymptomatic,
  Recovered
};

constexpr int kPhaseCount = 6;

const char* phase_name(InfectionPhase phase);

// Epidemiological and respiratory constants plus the simulation horizon.
struct SimulationParams {
  double pulmonary_ventilation_rate = 0.54;  // m3/h
  double quanta_generation_rate = 48.0;      // quanta/h
  double exhalation_filtration_efficiency = 0.5;
  double respiration_filtration_efficiency = 0.5;
  double asymptomatic_rate = 0.3;
  int exposed_days = 3;
  int infectious_exposed_days = 2;
  int infectious_days = 14;
  int asymptomatic_days = 8;
  int horizon_weeks = 12;

  int horizon_days() const { return horizon_weeks * 7; }
  bool operator==(const SimulationParams&) const = default;
};

SimulationParams default_params();

// A single room. All rooms in a school share one spec.
struct ClassroomSpec {
  double volume = 150.0;         // m3
  double air_change_rate = 3.0;  // 1/h
  // Set by the ventilation sweep; otherwise Q = volume * air change rate.
  std::optional<double> ventilation_override;

  double clean_air_ventilation_rate() const {
    return ventilation_override ? *ventilation_override
                                : volume * air_change_rate;
  }
  bool operator==(const ClassroomSpec&) const = default;
};

enum class ClassroomMode { SelfContained, Departmentalized };

const char* mode_name(ClassroomMode mode);
std::optional<ClassroomMode> parse_mode(const std::string& text);

struct SchoolConfig {
  ClassroomMode classroom_mode = ClassroomMode::SelfContained;
  int total_students = 24;
  int classrooms_per_lesson = 1;
  int lessons_per_day = 7;
  double lesson_minutes = 50.0;
  ClassroomSpec classroom;

  int students_per_room() const { return total_students / classrooms_per_lesson; }
  bool operator==(const SchoolConfig&) const = default;
};

SchoolConfig default_school(ClassroomMode mode);

struct AgentState {
  int student_id = 0;
  InfectionPhase phase = InfectionPhase::Susceptible;
  int phase_entry_day = 0;
};

struct LessonExposure {
  int infector_count = 0;
  int susceptible_count = 0;
  double exposure_minutes = 0.0;
  ClassroomSpec room;
};

// Collects every violated invariant with its field path; never aborts.
std::vector<std::string> validate(const SchoolConfig& school,
                                  const SimulationParams& params);

void to_json(nlohmann::json& j, const ClassroomSpec& spec);
void from_json(const nlohmann::json& j, ClassroomSpec& spec);
void to_json(nlohmann::json& j, const SchoolConfig& config);
void from_json(const nlohmann::json& j, SchoolConfig& config);
void to_json(nlohmann::json& j, const SimulationParams& params);
void from_json(const nlohmann::json& j, SimulationParams& params);

}  // namespace svis
