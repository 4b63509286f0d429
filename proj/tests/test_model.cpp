#include "doctest.h"
#include "svis/model.hpp"
#include "svis/random.hpp"

using namespace svis;

TEST_CASE("default parameters carry the baseline values") {
  const SimulationParams p = default_params();
  CHECK(p.pulmonary_ventilation_rate == doctest::Approx(0.54));
  CHECK(p.quanta_generation_rate == doctest::Approx(48.0));
  CHECK(p.exhalation_filtration_efficiency == doctest::Approx(0.5));
  CHECK(p.respiration_filtration_efficiency == doctest::Approx(0.5));
  CHECK(p.asymptomatic_rate == doctest::Approx(0.3));
  CHECK(p.exposed_days == 3);
  CHECK(p.infectious_exposed_days == 2);
  CHECK(p.infectious_days == 14);
  CHECK(p.asymptomatic_days == 8);
  CHECK(p.horizon_weeks == 12);
  CHECK(p.horizon_days() == 84);
}

TEST_CASE("default school configurations") {
  const SchoolConfig self = default_school(ClassroomMode::SelfContained);
  CHECK(self.total_students == 24);
  CHECK(self.classrooms_per_lesson == 1);
  CHECK(self.lessons_per_day == 7);
  CHECK(self.lesson_minutes == doctest::Approx(50.0));
  CHECK(self.classroom.volume == doctest::Approx(150.0));
  CHECK(self.classroom.air_change_rate == doctest::Approx(3.0));
  CHECK(self.classroom.clean_air_ventilation_rate() == doctest::Approx(450.0));

  const SchoolConfig dep = default_school(ClassroomMode::Departmentalized);
  CHECK(dep.total_students == 480);
  CHECK(dep.classrooms_per_lesson == 20);
  CHECK(dep.students_per_room() == 24);
  CHECK(dep.classroom.clean_air_ventilation_rate() == doctest::Approx(450.0));
}

TEST_CASE("ventilation rate derives exactly from volume and air changes") {
  RandomStream rng(7, 0);
  for (int i = 0; i < 200; ++i) {
    ClassroomSpec spec;
    spec.volume = 1.0 + 400.0 * rng.next_double();
    spec.air_change_rate = 0.1 + 10.0 * rng.next_double();
    CHECK(spec.clean_air_ventilation_rate() ==
          spec.volume * spec.air_change_rate);
  }

  ClassroomSpec overridden;
  overridden.ventilation_override = 900.0;
  CHECK(overridden.clean_air_ventilation_rate() == 900.0);
}

TEST_CASE("validation reports violations by field path") {
  SchoolConfig school = default_school(ClassroomMode::SelfContained);
  SimulationParams params = default_params();
  CHECK(validate(school, params).empty());

  SUBCASE("zero volume") {
    school.classroom.volume = 0.0;
    const auto report = validate(school, params);
    REQUIRE(!report.empty());
    bool named = false;
    for (const auto& line : report)
      if (line.find("ClassroomSpec.volume") != std::string::npos) named = true;
    CHECK(named);
  }

  SUBCASE("divisibility") {
    school.total_students = 25;
    school.classrooms_per_lesson = 20;
    const auto report = validate(school, params);
    REQUIRE(report.size() == 1);
    CHECK(report.front().find("not divisible") != std::string::npos);
  }

  SUBCASE("out-of-range probability") {
    params.asymptomatic_rate = 1.5;
    const auto report = validate(school, params);
    REQUIRE(report.size() == 1);
    CHECK(report.front().find("asymptomatic_rate") != std::string::npos);
  }

  SUBCASE("validation never aborts, it accumulates") {
    school.classroom.volume = -1.0;
    params.exposed_days = 0;
    params.horizon_weeks = 0;
    CHECK(validate(school, params).size() >= 3);
  }
}

TEST_CASE("config serialization round-trips") {
  RandomStream rng(11, 1);
  for (int i = 0; i < 100; ++i) {
    SimulationParams params;
    params.pulmonary_ventilation_rate = 0.1 + rng.next_double();
    params.quanta_generation_rate = 1.0 + 100.0 * rng.next_double();
    params.asymptomatic_rate = rng.next_double();
    params.exposed_days = 1 + static_cast<int>(rng.uniform_below(10));
    params.horizon_weeks = 1 + static_cast<int>(rng.uniform_below(20));

    SchoolConfig school = default_school(
        rng.bernoulli(0.5) ? ClassroomMode::SelfContained
                           : ClassroomMode::Departmentalized);
    school.classroom.volume = 50.0 + 200.0 * rng.next_double();
    if (rng.bernoulli(0.3))
      school.classroom.ventilation_override = 450.0 * (1 + rng.next_double());

    nlohmann::json jp = params;
    nlohmann::json js = school;
    CHECK(jp.get<SimulationParams>() == params);
    CHECK(js.get<SchoolConfig>() == school);
  }
}
