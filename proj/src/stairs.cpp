#include "xrl/stairs.hpp"

#include <algorithm>
#include <cmath>

#include "xrl/statics.hpp"

namespace xrl {

void StairScenario::validate() const {
  if (!(stair_height > 0.0)) {
    throw InvalidInputError("stair_height must be positive");
  }
  if (forward_lean < 0.0) {
    throw InvalidInputError("forward_lean must be >= 0");
  }
  if (!(hip_width > 0.0)) {
    throw InvalidInputError("hip_width must be positive");
  }
}

double stair_ankle_torque(const StairScenario& s) {
  s.validate();
  return s.load.total_vertical_load * s.forward_lean;
}

double stair_hip_torque(const StairScenario& s) {
  s.validate();
  return s.load.total_vertical_load * 0.5 * s.hip_width;
}

namespace {

double knee_torque_at(const StairScenario& s, const LegGeometry& geom,
                      double hip_height) {
  const JointState q =
      solve_squat_posture(geom, hip_height, Plane::kSagittal);
  const PlanarWrench w{0.0, -s.load.total_vertical_load, 0.0};
  return std::abs(leg_torques_from_wrench(jacobian(geom, q), w).knee);
}

}  // namespace

StairKneeResult stair_knee_torque(const StairScenario& s,
                                  const LegGeometry& geom) {
  s.validate();
  geom.validate();
  if (!(s.stair_height < geom.standing_height() - geom.crawling_height())) {
    throw UnreachableHeightError("step taller than the usable squat band");
  }

  const double hi = geom.standing_height();
  const double lo = hi - s.stair_height;

  constexpr int kSamples = 500;
  double best_h = hi;
  double best_tau = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double h = lo + (hi - lo) * static_cast<double>(i) / (kSamples - 1);
    const double tau = knee_torque_at(s, geom, h);
    if (tau > best_tau) {
      best_tau = tau;
      best_h = h;
    }
  }

  // Ternary refinement around the coarse maximizer.
  const double step = (hi - lo) / (kSamples - 1);
  double a = std::max(lo, best_h - step);
  double b = std::min(hi, best_h + step);
  for (int iter = 0; iter < 80; ++iter) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (knee_torque_at(s, geom, m1) < knee_torque_at(s, geom, m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  best_h = 0.5 * (a + b);
  best_tau = knee_torque_at(s, geom, best_h);

  StairKneeResult result;
  result.torque = best_tau;
  result.posture = solve_squat_posture(geom, best_h, Plane::kSagittal);
  result.hip_height = best_h;
  return result;
}

StairPeaks stair_peaks(const StairScenario& s, const LegGeometry& geom) {
  StairPeaks peaks;
  peaks.knee = stair_knee_torque(s, geom).torque;
  peaks.ankle = stair_ankle_torque(s);
  peaks.hip = stair_hip_torque(s);
  return peaks;
}

}  // namespace xrl
