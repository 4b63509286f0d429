#include "svis/model.hpp"

#include <sstream>

namespace svis {

const char* phase_name(InfectionPhase phase) {
  switch (phase) {
    case InfectionPhase::Susceptible: return "susceptible";
    case InfectionPhase::Exposed: return "exposed";
    case InfectionPhase::InfectiousExposed: return "infectious_exposed";
    case InfectionPhase::Infectious: return "infectious";
    case InfectionPhase::Asymptomatic: return "asymptomatic";
    case InfectionPhase::Recovered: return "recovered";
  }
  return "?";
}

SimulationParams default_params() { return SimulationParams{}; }

const char* mode_name(ClassroomMode mode) {
  return mode == ClassroomMode::SelfContained ? "self-contained"
                                              : "departmentalized";
}

std::optional<ClassroomMode> parse_mode(const std::string& text) {
  if (text == "self-contained" || text == "self_contained" || text == "sc")
    return ClassroomMode::SelfContained;
  if (text == "departmentalized" || text == "dep")
    return ClassroomMode::Departmentalized;
  return std::nullopt;
}

SchoolConfig default_school(ClassroomMode mode) {
  SchoolConfig config;
  config.classroom_mode = mode;
  if (mode == ClassroomMode::SelfContained) {
    config.total_students = 24;
    config.classrooms_per_lesson = 1;
  } else {
    config.total_students = 480;
    config.classrooms_per_lesson = 20;
  }
  return config;
}

namespace {

void check_unit_interval(std::vector<std::string>& report, const char* field,
                         double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream os;
    os << field << ": expected value in [0,1], got " << value;
    report.push_back(os.str());
  }
}

void check_positive(std::vector<std::string>& report, const char* field,
                    double value) {
  if (!(value > 0.0)) {
    std::ostringstream os;
    os << field << ": expected positive value, got " << value;
    report.push_back(os.str());
  }
}

void check_min_days(std::vector<std::string>& report, const char* field,
                    int value) {
  if (value < 1) {
    std::ostringstream os;
    os << field << ": expected at least 1, got " << value;
    report.push_back(os.str());
  }
}

}  // namespace

std::vector<std::string> validate(const SchoolConfig& school,
                                  const SimulationParams& params) {
  std::vector<std::string> report;

  check_positive(report, "SimulationParams.pulmonary_ventilation_rate",
                 params.pulmonary_ventilation_rate);
  check_positive(report, "SimulationParams.quanta_generation_rate",
                 params.quanta_generation_rate);
  check_unit_interval(report,
                      "SimulationParams.exhalation_filtration_efficiency",
                      params.exhalation_filtration_efficiency);
  check_unit_interval(report,
                      "SimulationParams.respiration_filtration_efficiency",
                      params.respiration_filtration_efficiency);
  check_unit_interval(report, "SimulationParams.asymptomatic_rate",
                      params.asymptomatic_rate);
  check_min_days(report, "SimulationParams.exposed_days", params.exposed_days);
  check_min_days(report, "SimulationParams.infectious_exposed_days",
                 params.infectious_exposed_days);
  check_min_days(report, "SimulationParams.infectious_days",
                 params.infectious_days);
  check_min_days(report, "SimulationParams.asymptomatic_days",
                 params.asymptomatic_days);
  check_min_days(report, "SimulationParams.horizon_weeks",
                 params.horizon_weeks);

  check_positive(report, "ClassroomSpec.volume", school.classroom.volume);
  check_positive(report, "ClassroomSpec.air_change_rate",
                 school.classroom.air_change_rate);
  check_positive(report, "ClassroomSpec.clean_air_ventilation_rate",
                 school.classroom.clean_air_ventilation_rate());

  if (school.total_students < 1)
    report.push_back("SchoolConfig.total_students: expected at least 1");
  if (school.classrooms_per_lesson < 1)
    report.push_back("SchoolConfig.classrooms_per_lesson: expected at least 1");
  if (school.lessons_per_day < 1)
    report.push_back("SchoolConfig.lessons_per_day: expected at least 1");
  check_positive(report, "SchoolConfig.lesson_minutes", school.lesson_minutes);
  if (school.total_students >= 1 && school.classrooms_per_lesson >= 1 &&
      school.total_students % school.classrooms_per_lesson != 0) {
    std::ostringstream os;
    os << "SchoolConfig.total_students: " << school.total_students
       << " not divisible by classrooms_per_lesson="
       << school.classrooms_per_lesson;
    report.push_back(os.str());
  }
  return report;
}

void to_json(nlohmann::json& j, const ClassroomSpec& spec) {
  j = nlohmann::json{{"volume", spec.volume},
                     {"air_change_rate", spec.air_change_rate}};
  if (spec.ventilation_override)
    j["clean_air_ventilation_rate"] = *spec.ventilation_override;
}

void from_json(const nlohmann::json& j, ClassroomSpec& spec) {
  spec.volume = j.value("volume", spec.volume);
  spec.air_change_rate = j.value("air_change_rate", spec.air_change_rate);
  if (j.contains("clean_air_ventilation_rate"))
    spec.ventilation_override = j.at("clean_air_ventilation_rate").get<double>();
  else
    spec.ventilation_override.reset();
}

void to_json(nlohmann::json& j, const SchoolConfig& config) {
  j = nlohmann::json{{"classroom_mode", mode_name(config.classroom_mode)},
                     {"total_students", config.total_students},
                     {"classrooms_per_lesson", config.classrooms_per_lesson},
                     {"lessons_per_day", config.lessons_per_day},
                     {"lesson_minutes", config.lesson_minutes},
                     {"classroom", config.classroom}};
}

void from_json(const nlohmann::json& j, SchoolConfig& config) {
  if (j.contains("classroom_mode")) {
    const auto mode = parse_mode(j.at("classroom_mode").get<std::string>());
    if (!mode)
      throw std::invalid_argument("SchoolConfig.classroom_mode: unknown mode " +
                                  j.at("classroom_mode").get<std::string>());
    config.classroom_mode = *mode;
  }
  config.total_students = j.value("total_students", config.total_students);
  config.classrooms_per_lesson =
      j.value("classrooms_per_lesson", config.classrooms_per_lesson);
  config.lessons_per_day = j.value("lessons_per_day", config.lessons_per_day);
  config.lesson_minutes = j.value("lesson_minutes", config.lesson_minutes);
  if (j.contains("classroom")) j.at("classroom").get_to(config.classroom);
}

void to_json(nlohmann::json& j, const SimulationParams& params) {
  j = nlohmann::json{
      {"pulmonary_ventilation_rate", params.pulmonary_ventilation_rate},
      {"quanta_generation_rate", params.quanta_generation_rate},
      {"exhalation_filtration_efficiency",
       params.exhalation_filtration_efficiency},
      {"respiration_filtration_efficiency",
       params.respiration_filtration_efficiency},
      {"asymptomatic_rate", params.asymptomatic_rate},
      {"exposed_days", params.exposed_days},
      {"infectious_exposed_days", params.infectious_exposed_days},
      {"infectious_days", params.infectious_days},
      {"asymptomatic_days", params.asymptomatic_days},
      {"horizon_weeks", params.horizon_weeks}};
}

void from_json(const nlohmann::json& j, SimulationParams& params) {
  params.pulmonary_ventilation_rate =
      j.value("pulmonary_ventilation_rate", params.pulmonary_ventilation_rate);
  params.quanta_generation_rate =
      j.value("quanta_generation_rate", params.quanta_generation_rate);
  params.exhalation_filtration_efficiency =
      j.value("exhalation_filtration_efficiency",
              params.exhalation_filtration_efficiency);
  params.respiration_filtration_efficiency =
      j.value("respiration_filtration_efficiency",
              params.respiration_filtration_efficiency);
  params.asymptomatic_rate =
      j.value("asymptomatic_rate", params.asymptomatic_rate);
  params.exposed_days = j.value("exposed_days", params.exposed_days);
  params.infectious_exposed_days =
      j.value("infectious_exposed_days", params.infectious_exposed_days);
  params.infectious_days = j.value("infectious_days", params.infectious_days);
  params.asymptomatic_days =
      j.value("asymptomatic_days", params.asymptomatic_days);
  params.horizon_weeks = j.value("horizon_weeks", params.horizon_weeks);
}

}  // namespace svis
