#pragma once

#include <utility>

#include <Eigen/Core>

#include "xrl/model.hpp"

namespace xrl {

enum class Plane { kSagittal, kFrontal };

/// Knee bending direction. Knees face back in the sagittal squat and outward
/// in the frontal squat; both correspond to a non-negative knee bend in the
/// plane conventions used here (t points forward in the sagittal model and
/// from the ankle toward the body midline in the frontal model).
enum class KneeBranch { kKneesBack, kKneesOut };

/// Joint angles of one planar 3R leg, foot to body. Each angle is the
/// relative bend measured from the straight-leg configuration, so the fully
/// extended leg is the all-zero state.
struct JointState {
  double ankle = 0.0;  // rad
  double knee = 0.0;   // rad
  double hip = 0.0;    // rad
  Plane plane = Plane::kSagittal;
  KneeBranch branch = KneeBranch::kKneesBack;
};

/// Pose of the hip attachment relative to the ankle joint of the stance foot:
/// in-plane tangential offset, vertical height, and torso tilt.
struct HipPose {
  double t = 0.0;    // m
  double z = 0.0;    // m
  double phi = 0.0;  // rad
};

HipPose forward_kinematics(const LegGeometry& geom, const JointState& q);

/// 3x3 Jacobian mapping joint rates (ankle, knee, hip) to the hip-attachment
/// twist (t-dot, z-dot, phi-dot). Rows 0/1/2 are the t/z/phi rows; the phi
/// row of a planar revolute chain is identically (1, 1, 1).
Eigen::Matrix3d jacobian(const LegGeometry& geom, const JointState& q);

inline constexpr int kRowT = 0;
inline constexpr int kRowZ = 1;
inline constexpr int kRowPhi = 2;

/// Closed-form squat posture: places the hip attachment at
/// (t = lateral_offset, z = height) with a level torso (phi = 0), knee branch
/// dictated by the plane. Throws UnreachableHeightError when the target is
/// outside the annulus [l2 - l1, l1 + l2], InvalidInputError for a nonzero
/// offset in the sagittal plane.
JointState solve_squat_posture(const LegGeometry& geom, double height,
                               Plane plane, double lateral_offset = 0.0);

/// Heights at which the leg is kinematically singular:
/// (standing = l1 + l2, crawling = l2 - l1).
std::pair<double, double> singular_heights(const LegGeometry& geom);

/// Left/right mirror image of a state: all joint angles negated
/// (t -> -t under forward kinematics).
JointState mirrored(const JointState& q);

}  // namespace xrl
