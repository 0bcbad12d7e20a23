#include "xrl/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace xrl {

namespace {

// Absolute link tilts from vertical: link 2 (ankle->knee) tilts by the ankle
// bend, link 1 (knee->hip) by ankle + knee bend.
struct LinkTilts {
  double a2;  // link adjacent to the foot
  double a1;  // link adjacent to the hip
};

LinkTilts tilts(const JointState& q) { return {q.ankle, q.ankle + q.knee}; }

constexpr double kReachSlack = 1e-9;

}  // namespace

HipPose forward_kinematics(const LegGeometry& geom, const JointState& q) {
  geom.validate();
  const auto [a2, a1] = tilts(q);
  HipPose pose;
  pose.t = geom.l2 * std::sin(a2) + geom.l1 * std::sin(a1);
  pose.z = geom.l2 * std::cos(a2) + geom.l1 * std::cos(a1);
  pose.phi = q.ankle + q.knee + q.hip;
  return pose;
}

Eigen::Matrix3d jacobian(const LegGeometry& geom, const JointState& q) {
  geom.validate();
  const auto [a2, a1] = tilts(q);
  const double c2 = geom.l2 * std::cos(a2);
  const double c1 = geom.l1 * std::cos(a1);
  const double s2 = geom.l2 * std::sin(a2);
  const double s1 = geom.l1 * std::sin(a1);
  Eigen::Matrix3d J;
  J << c2 + c1, c1, 0.0,    // t row
      -s2 - s1, -s1, 0.0,   // z row
      1.0, 1.0, 1.0;        // phi row
  return J;
}

JointState solve_squat_posture(const LegGeometry& geom, double height,
                               Plane plane, double lateral_offset) {
  geom.validate();
  if (!std::isfinite(height) || !std::isfinite(lateral_offset)) {
    throw InvalidInputError("height and lateral_offset must be finite");
  }
  if (plane == Plane::kSagittal && lateral_offset != 0.0) {
    throw InvalidInputError(
        "sagittal squat stands directly over the ankle (lateral_offset = 0)");
  }
  if (height <= 0.0) {
    throw UnreachableHeightError("hip height must be positive");
  }

  const double t = lateral_offset;
  const double d = std::hypot(t, height);
  const double reach_max = geom.standing_height();
  const double reach_min = geom.crawling_height();
  if (d > reach_max + kReachSlack || d < reach_min - kReachSlack) {
    throw UnreachableHeightError("hip target outside the reachable annulus");
  }

  double knee_cos =
      (d * d - geom.l1 * geom.l1 - geom.l2 * geom.l2) / (2.0 * geom.l1 * geom.l2);
  knee_cos = std::clamp(knee_cos, -1.0, 1.0);

  // Knees back / knees out both bend toward -t; a mirrored target flips the
  // branch so that mirroring the offset mirrors the whole state.
  const double sign = (t < 0.0) ? -1.0 : 1.0;
  const double knee = sign * std::acos(knee_cos);

  const double beta = std::atan2(t, height);
  const double ankle =
      beta - std::atan2(geom.l1 * std::sin(knee),
                        geom.l2 + geom.l1 * std::cos(knee));

  JointState q;
  q.ankle = ankle;
  q.knee = knee;
  q.hip = -(ankle + knee);  // level torso
  q.plane = plane;
  q.branch = (plane == Plane::kSagittal) ? KneeBranch::kKneesBack
                                         : KneeBranch::kKneesOut;
  return q;
}

std::pair<double, double> singular_heights(const LegGeometry& geom) {
  geom.validate();
  return {geom.standing_height(), geom.crawling_height()};
}

JointState mirrored(const JointState& q) {
  JointState m = q;
  m.ankle = -q.ankle;
  m.knee = -q.knee;
  m.hip = -q.hip;
  return m;
}

}  // namespace xrl
