#include "xrl/actuation.hpp"

#include <cmath>

namespace xrl {

namespace {

// Velocity map of the differential before the gear ratio: output axis turns
// with the half-difference of the inputs, carrier with the half-sum.
const Eigen::Matrix2d kDiffVelocity = (Eigen::Matrix2d() << 0.5, -0.5,  //
                                       0.5, 0.5).finished();

// Transpose-inverse of kDiffVelocity; statics dual of the velocity map.
const Eigen::Matrix2d kDiffTorque = (Eigen::Matrix2d() << 1.0, -1.0,  //
                                     1.0, 1.0).finished();

}  // namespace

void MotorSpec::validate() const {
  if (!(torque_constant > 0.0) || !(max_continuous_current > 0.0) ||
      !(max_peak_current > 0.0) || !(mass > 0.0)) {
    throw InvalidInputError("motor ratings must be positive");
  }
  if (max_peak_current < max_continuous_current) {
    throw InvalidInputError("peak current rating below continuous rating");
  }
}

double motor_torque(double current, const MotorSpec& spec) {
  spec.validate();
  if (std::abs(current) > spec.max_peak_current) {
    throw OverCurrentError("current outside the rated range");
  }
  return spec.torque_constant * current;
}

double required_gear_ratio(double peak_joint_torque, const MotorSpec& spec,
                           int motors) {
  spec.validate();
  if (peak_joint_torque < 0.0) {
    throw InvalidInputError("peak joint torque must be non-negative");
  }
  if (motors != 1 && motors != 2) {
    throw InvalidInputError("motors per joint must be 1 or 2");
  }
  return peak_joint_torque /
         (motors * motor_torque(spec.max_continuous_current, spec));
}

Eigen::Vector2d differential_output_torque(const Eigen::Vector2d& motor_torques,
                                           double ratio) {
  if (!(ratio > 0.0)) throw InvalidInputError("gear ratio must be positive");
  return ratio * (kDiffTorque * motor_torques);
}

Eigen::Vector2d differential_output_velocity(
    const Eigen::Vector2d& motor_velocities, double ratio) {
  if (!(ratio > 0.0)) throw InvalidInputError("gear ratio must be positive");
  return (kDiffVelocity * motor_velocities) / ratio;
}

std::vector<FeasibilityEntry> check_actuation_feasibility(
    const std::vector<JointPeak>& peaks, const std::vector<JointDrive>& drives,
    const MotorSpec& spec) {
  spec.validate();
  std::vector<FeasibilityEntry> report;
  report.reserve(drives.size());
  for (const JointDrive& drive : drives) {
    FeasibilityEntry entry;
    entry.joint = drive.joint;
    entry.motors = drive.motors_per_joint;
    entry.gear_ratio = drive.gear_ratio;
    for (const JointPeak& p : peaks) {
      if (p.joint == drive.joint) entry.peak_torque = p.peak_torque;
    }
    if (entry.peak_torque > 0.0) {
      entry.required_ratio =
          required_gear_ratio(entry.peak_torque, spec, drive.motors_per_joint);
      entry.required_current =
          entry.peak_torque /
          (drive.motors_per_joint * drive.gear_ratio * spec.torque_constant);
    }
    entry.within_continuous =
        entry.required_current <= spec.max_continuous_current;
    entry.within_peak = entry.required_current <= spec.max_peak_current;
    entry.continuous_margin =
        (spec.max_continuous_current - entry.required_current) /
        spec.max_continuous_current;
    entry.ratio_ok = entry.required_ratio <= kMaxGearRatio &&
                     drive.gear_ratio <= kMaxGearRatio;
    entry.multi_stage_risk = drive.gear_ratio > kSingleStageRatioLimit ||
                             entry.required_ratio > kMaxGearRatio;
    entry.feasible = entry.within_continuous && entry.ratio_ok;
    report.push_back(entry);
  }
  return report;
}

}  // namespace xrl
