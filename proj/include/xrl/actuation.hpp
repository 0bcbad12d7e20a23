#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "xrl/model.hpp"

namespace xrl {

/// Electro-mechanical ratings of one drive motor (linear torque model, no
/// saturation within the rated current range).
struct MotorSpec {
  double torque_constant = 0.45;       // Nm/A
  double max_continuous_current = 50;  // A
  double max_peak_current = 75;        // A
  double mass = 2.2;                   // kg

  void validate() const;
};

/// Drive layout of one joint. Near-direct-drive requires the net gear
/// reduction to stay at or below 10:1.
struct JointDrive {
  std::string joint;
  int motors_per_joint = 2;
  double gear_ratio = 1.0;
  bool differential = true;
};

inline constexpr double kMaxGearRatio = 10.0;

/// Gear ratios above this typically need more than one transmission stage.
inline constexpr double kSingleStageRatioLimit = 5.0;

double motor_torque(double current, const MotorSpec& spec);

/// Net gear reduction needed to hold a peak joint torque with the motors at
/// continuous current, lossless transmission.
double required_gear_ratio(double peak_joint_torque, const MotorSpec& spec,
                           int motors);

/// Two-input differential: torques of the two motors mapped to the
/// (output axis, carrier axis) pair through a gear ratio. Equal and opposite
/// motor torques combine fully on the output axis, doubling the effective
/// torque; equal same-direction torques drive only the carrier.
Eigen::Vector2d differential_output_torque(const Eigen::Vector2d& motor_torques,
                                           double ratio);

/// Velocity map dual to differential_output_torque: joint-side power equals
/// motor-side power for every torque/velocity pair.
Eigen::Vector2d differential_output_velocity(
    const Eigen::Vector2d& motor_velocities, double ratio);

struct JointPeak {
  std::string joint;
  double peak_torque = 0.0;  // Nm
};

struct FeasibilityEntry {
  std::string joint;
  double peak_torque = 0.0;
  int motors = 1;
  double gear_ratio = 1.0;
  double required_ratio = 0.0;    // at continuous current
  double required_current = 0.0;  // at the configured ratio, A
  double continuous_margin = 0.0; // (rated - required) / rated
  bool within_continuous = false;
  bool within_peak = false;
  bool ratio_ok = false;
  bool multi_stage_risk = false;
  bool feasible = false;
};

/// Checks each drive against its torque peak: required current at the
/// configured ratio, current ratings, and the near-direct-drive ratio bound.
/// Failures are report entries, never exceptions.
std::vector<FeasibilityEntry> check_actuation_feasibility(
    const std::vector<JointPeak>& peaks, const std::vector<JointDrive>& drives,
    const MotorSpec& spec);

}  // namespace xrl
