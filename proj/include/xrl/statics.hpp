#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "xrl/kinematics.hpp"
#include "xrl/model.hpp"

namespace xrl {

/// Internal wrench circulating in the closed chain formed by the two legs,
/// the ground and the body during a frontal squat. The right leg carries
/// (+f_y, +m), the left leg (-f_y, -m); the pair has no effect on the net
/// static balance.
struct InternalWrench {
  double f_y = 0.0;  // lateral squeeze force between the legs, N
  double m = 0.0;    // internal moment, Nm
};

enum class SquatStrategy {
  kSagittal,
  kFrontalL2,
  kFrontalMinimax,
  kFrontalFixedAnkle,
};

/// Static duality tau = J^T w between the hip-attachment wrench and the
/// joint torques of one leg.
JointTorques leg_torques_from_wrench(const Eigen::Matrix3d& J,
                                     const PlanarWrench& w);

/// Per-leg torques for a squat in the sagittal plane, standing over the
/// ankle: half the vertical load plus the per-leg rearing moment of the
/// assistive force.
JointTorques sagittal_squat_torques(const LegGeometry& geom,
                                    const LoadCase& load, double height);

/// Right-leg torques in the frontal-plane closed chain:
/// tau = J_ytheta^T (f_y, m) - J_z^T (mg/2). The left leg is the mirror
/// image with the internal wrench negated.
JointTorques frontal_chain_torques(const LegGeometry& geom,
                                   const LoadCase& load, double height,
                                   double lateral_offset,
                                   const InternalWrench& iw);

/// Internal wrench minimizing the sum of squared joint torques, via the
/// Moore-Penrose pseudoinverse of the transposed (t, phi) Jacobian block.
InternalWrench optimal_internal_wrench(const LegGeometry& geom,
                                       const LoadCase& load, double height,
                                       double lateral_offset);

/// Torques at the optimal internal wrench; the residual of projecting the
/// zero-internal-wrench solution out of the controllable subspace. Its
/// Euclidean norm never exceeds that of the zero-internal-wrench solution.
JointTorques optimal_torques_l2(const LegGeometry& geom, const LoadCase& load,
                                double height, double lateral_offset);

struct MinimaxResult {
  JointTorques torques;
  double max_abs = 0.0;         // achieved max |tau|
  double internal_moment = 0.0; // the internal moment m realizing the optimum
};

/// Minimizes the largest torque magnitude over the one-parameter family of
/// closed-chain solutions with zero lateral squeeze force: all three torques
/// shift together with the internal moment, so the exact optimum is the
/// midpoint of the torque range (the objective is piecewise-linear convex).
/// With `fixed_ankle_torque` set, the ankle is pinned there instead and the
/// other joints follow from the chain constraints.
MinimaxResult minimax_torques(const LegGeometry& geom, const LoadCase& load,
                              double height, double lateral_offset,
                              std::optional<double> fixed_ankle_torque = {});

/// Moore-Penrose pseudoinverse via SVD; singular values below
/// rel_tol * sigma_max are treated as zero.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A,
                               double rel_tol = 1e-10);

/// A squat scenario: one leg's geometry plus the shared load and stance.
struct SquatScenario {
  LegGeometry geom;
  LoadCase load;
  double lateral_offset = 0.0;  // per-leg frontal stance offset, m
  double foot_width = 0.1524;   // m

  /// Ankle torque keeping the foot flat in the frontal squat: half the
  /// per-leg gravitational load times half the foot width.
  double fixed_ankle_torque() const {
    return load.vertical_per_leg() * 0.5 * foot_width;
  }
};

struct ProfileSample {
  double height = 0.0;
  bool reachable = false;
  JointTorques torques;
  InternalWrench iw;
  bool has_iw = false;
  double max_abs = 0.0;
  double l2_norm = 0.0;
};

struct SquatProfile {
  SquatStrategy strategy = SquatStrategy::kSagittal;
  std::vector<ProfileSample> samples;
};

/// Uniform height samples over the open squat band
/// [l2 - l1 + 1 mm, l1 + l2 - 1 mm].
std::vector<double> default_sweep_heights(const LegGeometry& geom,
                                          int samples = 200);

/// Evaluates one strategy over a height sweep. Unreachable samples are
/// flagged and the sweep continues.
SquatProfile squat_profile(const SquatScenario& scenario,
                           std::span<const double> heights,
                           SquatStrategy strategy);

struct StrategyComparisonRow {
  double height = 0.0;
  bool sagittal_reachable = false;
  bool frontal_reachable = false;
  double sagittal_max = 0.0;
  double frontal_l2_max = 0.0;
  double frontal_minimax_max = 0.0;
  double frontal_fixed_ankle_max = 0.0;
  double l2_norm_ratio = 0.0;  // ||tau_l2|| / ||tau(iw=0)||
};

std::vector<StrategyComparisonRow> compare_strategies(
    const SquatScenario& scenario, std::span<const double> heights);

struct RedistributionSample {
  double ankle_torque = 0.0;  // the free parameter
  JointTorques torques;
  double max_abs = 0.0;
  double residual_knee_ankle = 0.0;  // chain-constraint residuals, Nm
  double residual_hip_knee = 0.0;
  bool is_optimum = false;
};

/// Sweeps the free parameter of the zero-squeeze closed-chain family,
/// parametrized by the ankle torque. The exact minimax optimum is inserted
/// as a marked row.
std::vector<RedistributionSample> redistribution_sweep(
    const LegGeometry& geom, const LoadCase& load, double height,
    double lateral_offset, double ankle_lo, double ankle_hi, int samples);

}  // namespace xrl
