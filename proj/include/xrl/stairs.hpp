#pragma once

#include "xrl/kinematics.hpp"
#include "xrl/model.hpp"

namespace xrl {

/// Single-support stair-ascent scenario. The whole load rides on one leg
/// while the other reaches for the next step.
struct StairScenario {
  double stair_height = 0.203;  // m
  double forward_lean = 0.20;   // m
  double hip_width = 0.3556;    // m
  LoadCase load;                // stair kind, per_leg = false

  void validate() const;
};

/// Peak ankle torque: the full load acting at the forward-lean moment arm.
double stair_ankle_torque(const StairScenario& s);

/// Peak stance-hip abduction torque holding the torso level: the full load
/// at half the hip width.
double stair_hip_torque(const StairScenario& s);

struct StairKneeResult {
  double torque = 0.0;      // Nm
  JointState posture;       // worst stance posture found
  double hip_height = 0.0;  // m
};

/// Worst-case stance-knee torque over the descent band the hip must pass
/// through so the swing foot clears the step (hip height in
/// [l1 + l2 - stair_height, l1 + l2]). 1D sweep plus local refinement.
StairKneeResult stair_knee_torque(const StairScenario& s,
                                  const LegGeometry& geom);

struct StairPeaks {
  double knee = 0.0;
  double ankle = 0.0;
  double hip = 0.0;
};

StairPeaks stair_peaks(const StairScenario& s, const LegGeometry& geom);

}  // namespace xrl
