#include <doctest.h>

#include <cmath>
#include <random>

#include "xrl/actuation.hpp"

using namespace xrl;

TEST_CASE("motor torque at peak current") {
  const MotorSpec motor;
  CHECK(motor_torque(50.0, motor) == doctest::Approx(22.5).epsilon(1e-12));
  CHECK(motor_torque(0.0, motor) == 0.0);
  CHECK(motor_torque(-10.0, motor) == doctest::Approx(-4.5).epsilon(1e-12));
}

TEST_CASE("current beyond the peak rating is rejected") {
  const MotorSpec motor;
  CHECK_NOTHROW(motor_torque(75.0, motor));
  CHECK_NOTHROW(motor_torque(-75.0, motor));
  CHECK_THROWS_AS(motor_torque(75.0 + 1e-9, motor), OverCurrentError);
  CHECK_THROWS_AS(motor_torque(-76.0, motor), OverCurrentError);
}

TEST_CASE("required gear ratio for the published knee peak") {
  const MotorSpec motor;
  CHECK(required_gear_ratio(168.0, motor, 1) ==
        doctest::Approx(168.0 / 22.5).epsilon(1e-12));
  CHECK(required_gear_ratio(168.0, motor, 1) == doctest::Approx(7.47).epsilon(1e-3));
  CHECK(required_gear_ratio(168.0, motor, 2) ==
        doctest::Approx(168.0 / 45.0).epsilon(1e-12));
  CHECK(required_gear_ratio(22.5, motor, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(required_gear_ratio(0.0, motor, 2) == 0.0);
  CHECK_THROWS_AS(required_gear_ratio(-1.0, motor, 1), InvalidInputError);
  CHECK_THROWS_AS(required_gear_ratio(10.0, motor, 0), InvalidInputError);
}

TEST_CASE("differential torque map: common and differential modes") {
  const double ratio = 4.0;
  // Both motors pushing the same way drive the carrier, not the output axis.
  Eigen::Vector2d out = differential_output_torque({10.0, 10.0}, ratio);
  CHECK(out[0] == doctest::Approx(0.0));
  CHECK(out[1] == doctest::Approx(80.0).epsilon(1e-12));

  // Opposed motors drive the output axis only.
  out = differential_output_torque({10.0, -10.0}, ratio);
  CHECK(out[0] == doctest::Approx(80.0).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(0.0));
}

TEST_CASE("differential velocity map halves and mixes the motor speeds") {
  const double ratio = 4.0;
  Eigen::Vector2d out = differential_output_velocity({8.0, 8.0}, ratio);
  CHECK(out[0] == doctest::Approx(0.0));
  CHECK(out[1] == doctest::Approx(2.0).epsilon(1e-12));

  out = differential_output_velocity({8.0, -8.0}, ratio);
  CHECK(out[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(0.0));
}

TEST_CASE("differential maps conserve power for random inputs") {
  std::mt19937 rng(83);
  std::uniform_real_distribution<double> torque(-20.0, 20.0);
  std::uniform_real_distribution<double> speed(-30.0, 30.0);
  std::uniform_real_distribution<double> ratio_dist(0.5, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double ratio = ratio_dist(rng);
    const Eigen::Vector2d tau_m{torque(rng), torque(rng)};
    const Eigen::Vector2d qd_m{speed(rng), speed(rng)};
    const Eigen::Vector2d tau_o = differential_output_torque(tau_m, ratio);
    const Eigen::Vector2d qd_o = differential_output_velocity(qd_m, ratio);
    const double p_in = tau_m.dot(qd_m);
    const double p_out = tau_o.dot(qd_o);
    CHECK(std::abs(p_in - p_out) <= 1e-12 * std::max(1.0, std::abs(p_in)));
  }
}

TEST_CASE("invalid gear ratios are rejected") {
  CHECK_THROWS_AS(differential_output_torque({1.0, 1.0}, 0.0), InvalidInputError);
  CHECK_THROWS_AS(differential_output_velocity({1.0, 1.0}, -2.0),
                  InvalidInputError);
}

TEST_CASE("feasibility report for the published sizing case") {
  const MotorSpec motor;
  std::vector<JointDrive> drives = {
      {"hip", 2, 3.74, true}, {"knee", 2, 3.74, true}, {"ankle", 2, 3.74, true}};
  std::vector<JointPeak> peaks = {
      {"hip", 102.8}, {"knee", 168.0}, {"ankle", 115.6}};
  const auto report = check_actuation_feasibility(peaks, drives, motor);
  REQUIRE(report.size() == 3);
  for (const auto& e : report) {
    CHECK(e.ratio_ok);
    CHECK_FALSE(e.multi_stage_risk);
    CHECK(e.required_ratio ==
          doctest::Approx(e.peak_torque / 45.0).epsilon(1e-12));
    CHECK(e.required_current ==
          doctest::Approx(e.peak_torque / (2 * 3.74 * 0.45)).epsilon(1e-12));
    CHECK(e.within_peak);
    CHECK(e.within_continuous);
    CHECK(e.feasible);
  }
}

TEST_CASE("feasibility flags trip at the documented limits") {
  const MotorSpec motor;
  const std::vector<JointPeak> peaks = {{"knee", 168.0}};

  // Ratio above the hard cap.
  auto report = check_actuation_feasibility(
      peaks, {{"knee", 2, 10.0 + 1e-9, true}}, motor);
  CHECK_FALSE(report[0].ratio_ok);
  CHECK_FALSE(report[0].feasible);

  // Single stage beyond 5:1 flags a multi-stage design.
  report = check_actuation_feasibility(peaks, {{"knee", 2, 6.0, true}}, motor);
  CHECK(report[0].ratio_ok);
  CHECK(report[0].multi_stage_risk);

  // A ratio too small to reach the peak within continuous current.
  report = check_actuation_feasibility(peaks, {{"knee", 2, 1.0, true}}, motor);
  CHECK_FALSE(report[0].within_continuous);
  CHECK_FALSE(report[0].feasible);
}

TEST_CASE("feasibility improves monotonically with gear ratio") {
  const MotorSpec motor;
  const std::vector<JointPeak> peaks = {{"knee", 168.0}};
  double prev_current = 1e300;
  for (double ratio = 0.5; ratio <= 10.0; ratio += 0.5) {
    const auto report =
        check_actuation_feasibility(peaks, {{"knee", 2, ratio, true}}, motor);
    CHECK(report[0].required_current < prev_current);
    prev_current = report[0].required_current;
  }
}
