#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace xrl {

/// Standard gravity, m/s^2. Mass inputs are converted to forces with this
/// constant; imperial inputs are never stored.
inline constexpr double kGravity = 9.80665;

/// Moment arm of the assistive lifting force about the hip attachment, m.
/// Calibrated so a 222.4 N assist produces a 59 Nm rearing moment per leg.
inline constexpr double kDefaultAssistMomentArm = 0.5306;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

class UnreachableHeightError : public Error {
 public:
  using Error::Error;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class OverCurrentError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Operator dimensions the leg geometry is sized from.
struct Anthropometrics {
  double standing_attach_height = 1.45;  // attachment height standing, m
  double crawling_attach_height = 0.60;  // attachment height crawling, m
  double hip_width = 0.3556;             // m
  double foot_width = 0.1524;            // m

  void validate() const;
};

/// Link lengths of one 3R planar leg. l2 connects ankle to knee, l1 connects
/// knee to the hip attachment; l2 > l1 so the folded height l2 - l1 is
/// positive.
struct LegGeometry {
  double l1;  // link adjacent to the hip, m
  double l2;  // link adjacent to the foot, m

  double standing_height() const { return l1 + l2; }
  double crawling_height() const { return l2 - l1; }

  void validate() const;
};

/// Sizes the links so that both the standing and the crawling attachment
/// heights are kinematic singularities of the leg.
LegGeometry solve_link_lengths(const Anthropometrics& anthro);
LegGeometry solve_link_lengths(double standing_height, double crawling_height);

enum class ScenarioKind { kSquat, kStair };

/// Lumped gravitational and assistive loads for one scenario.
struct LoadCase {
  double total_vertical_load = 0.0;  // mg, positive magnitude, N
  double assist_force = 0.0;         // upward assistive force, N
  double assist_moment_arm = 0.0;    // m
  bool per_leg = true;               // split equally across two legs

  double vertical_per_leg() const {
    return per_leg ? 0.5 * total_vertical_load : total_vertical_load;
  }
  double assist_moment_per_leg() const {
    return (per_leg ? 0.5 : 1.0) * assist_force * assist_moment_arm;
  }
};

/// Builds the load case for a scenario. Squats carry robot + payload weight
/// plus the assistive force; stair climbing carries robot + payload only, on
/// a single support leg.
LoadCase make_load_case(ScenarioKind kind, double robot_mass_kg,
                        double payload_mass_kg, double assist_force_n,
                        double assist_moment_arm_m = kDefaultAssistMomentArm);

/// Planar wrench applied at the hip attachment of one leg: tangential force,
/// vertical force, moment.
struct PlanarWrench {
  double f_t = 0.0;  // N
  double f_n = 0.0;  // N
  double m = 0.0;    // Nm

  Eigen::Vector3d vec() const { return {f_t, f_n, m}; }
};

/// Torques of one leg, Nm. Vector order is foot-to-body: (ankle, knee, hip).
struct JointTorques {
  double ankle = 0.0;
  double knee = 0.0;
  double hip = 0.0;

  Eigen::Vector3d vec() const { return {ankle, knee, hip}; }
  static JointTorques from_vec(const Eigen::Vector3d& v) {
    return {v[0], v[1], v[2]};
  }

  double max_abs() const {
    return std::max({std::abs(ankle), std::abs(knee), std::abs(hip)});
  }
  double norm() const { return vec().norm(); }
};

}  // namespace xrl
