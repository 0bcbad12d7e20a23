#include "xrl/statics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace xrl {

namespace {

struct FrontalSetup {
  JointState q;
  Eigen::Matrix3d J;
  Eigen::Vector3d tau_base;             // torques at zero internal wrench
  Eigen::Matrix<double, 3, 2> A;        // transposed (t, phi) Jacobian block
};

FrontalSetup frontal_setup(const LegGeometry& geom, const LoadCase& load,
                           double height, double lateral_offset) {
  FrontalSetup s;
  s.q = solve_squat_posture(geom, height, Plane::kFrontal, lateral_offset);
  s.J = jacobian(geom, s.q);
  s.tau_base = -s.J.row(kRowZ).transpose() * load.vertical_per_leg();
  s.A.col(0) = s.J.row(kRowT).transpose();
  s.A.col(1) = s.J.row(kRowPhi).transpose();
  return s;
}

}  // namespace

JointTorques leg_torques_from_wrench(const Eigen::Matrix3d& J,
                                     const PlanarWrench& w) {
  return JointTorques::from_vec(J.transpose() * w.vec());
}

JointTorques sagittal_squat_torques(const LegGeometry& geom,
                                    const LoadCase& load, double height) {
  const JointState q = solve_squat_posture(geom, height, Plane::kSagittal);
  const PlanarWrench w{0.0, -load.vertical_per_leg(),
                       load.assist_moment_per_leg()};
  return leg_torques_from_wrench(jacobian(geom, q), w);
}

JointTorques frontal_chain_torques(const LegGeometry& geom,
                                   const LoadCase& load, double height,
                                   double lateral_offset,
                                   const InternalWrench& iw) {
  const JointState q =
      solve_squat_posture(geom, height, Plane::kFrontal, lateral_offset);
  const PlanarWrench w{iw.f_y, -load.vertical_per_leg(), iw.m};
  return leg_torques_from_wrench(jacobian(geom, q), w);
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = rel_tol * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) inv_sv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
}

InternalWrench optimal_internal_wrench(const LegGeometry& geom,
                                       const LoadCase& load, double height,
                                       double lateral_offset) {
  const FrontalSetup s = frontal_setup(geom, load, height, lateral_offset);
  const Eigen::Vector2d iw = -pseudo_inverse(s.A) * s.tau_base;
  return {iw[0], iw[1]};
}

JointTorques optimal_torques_l2(const LegGeometry& geom, const LoadCase& load,
                                double height, double lateral_offset) {
  const FrontalSetup s = frontal_setup(geom, load, height, lateral_offset);
  const Eigen::Vector2d iw = -pseudo_inverse(s.A) * s.tau_base;
  return JointTorques::from_vec(s.tau_base + s.A * iw);
}

MinimaxResult minimax_torques(const LegGeometry& geom, const LoadCase& load,
                              double height, double lateral_offset,
                              std::optional<double> fixed_ankle_torque) {
  const FrontalSetup s = frontal_setup(geom, load, height, lateral_offset);

  // Zero squeeze force: the internal moment shifts every torque equally, so
  // max|tau_i + m| is piecewise linear in m with breakpoints at the
  // pairwise midpoints; the minimizer is the midpoint of the range.
  double m;
  if (fixed_ankle_torque) {
    m = *fixed_ankle_torque - s.tau_base[0];
  } else {
    m = -0.5 * (s.tau_base.maxCoeff() + s.tau_base.minCoeff());
  }

  MinimaxResult result;
  result.torques =
      JointTorques::from_vec(s.tau_base + Eigen::Vector3d::Constant(m));
  result.max_abs = result.torques.max_abs();
  result.internal_moment = m;
  return result;
}

std::vector<double> default_sweep_heights(const LegGeometry& geom,
                                          int samples) {
  geom.validate();
  if (samples < 2) throw InvalidInputError("need at least 2 sweep samples");
  const double lo = geom.crawling_height() + 1e-3;
  const double hi = geom.standing_height() - 1e-3;
  std::vector<double> heights(samples);
  for (int i = 0; i < samples; ++i) {
    heights[i] = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
  }
  return heights;
}

SquatProfile squat_profile(const SquatScenario& scenario,
                           std::span<const double> heights,
                           SquatStrategy strategy) {
  SquatProfile profile;
  profile.strategy = strategy;
  profile.samples.reserve(heights.size());
  for (double h : heights) {
    ProfileSample sample;
    sample.height = h;
    try {
      switch (strategy) {
        case SquatStrategy::kSagittal:
          sample.torques =
              sagittal_squat_torques(scenario.geom, scenario.load, h);
          break;
        case SquatStrategy::kFrontalL2: {
          sample.iw = optimal_internal_wrench(scenario.geom, scenario.load, h,
                                              scenario.lateral_offset);
          sample.torques =
              frontal_chain_torques(scenario.geom, scenario.load, h,
                                    scenario.lateral_offset, sample.iw);
          sample.has_iw = true;
          break;
        }
        case SquatStrategy::kFrontalMinimax: {
          const MinimaxResult r = minimax_torques(
              scenario.geom, scenario.load, h, scenario.lateral_offset);
          sample.torques = r.torques;
          sample.iw = {0.0, r.internal_moment};
          sample.has_iw = true;
          break;
        }
        case SquatStrategy::kFrontalFixedAnkle: {
          const MinimaxResult r = minimax_torques(
              scenario.geom, scenario.load, h, scenario.lateral_offset,
              scenario.fixed_ankle_torque());
          sample.torques = r.torques;
          sample.iw = {0.0, r.internal_moment};
          sample.has_iw = true;
          break;
        }
      }
      sample.reachable = true;
      sample.max_abs = sample.torques.max_abs();
      sample.l2_norm = sample.torques.norm();
    } catch (const UnreachableHeightError&) {
      sample.reachable = false;
    }
    profile.samples.push_back(sample);
  }
  return profile;
}

std::vector<StrategyComparisonRow> compare_strategies(
    const SquatScenario& scenario, std::span<const double> heights) {
  std::vector<StrategyComparisonRow> rows;
  rows.reserve(heights.size());
  for (double h : heights) {
    StrategyComparisonRow row;
    row.height = h;
    try {
      row.sagittal_max =
          sagittal_squat_torques(scenario.geom, scenario.load, h).max_abs();
      row.sagittal_reachable = true;
    } catch (const UnreachableHeightError&) {
    }
    try {
      const JointTorques base = frontal_chain_torques(
          scenario.geom, scenario.load, h, scenario.lateral_offset, {});
      const JointTorques l2 = optimal_torques_l2(scenario.geom, scenario.load,
                                                 h, scenario.lateral_offset);
      row.frontal_l2_max = l2.max_abs();
      row.frontal_minimax_max =
          minimax_torques(scenario.geom, scenario.load, h,
                          scenario.lateral_offset)
              .max_abs;
      row.frontal_fixed_ankle_max =
          minimax_torques(scenario.geom, scenario.load, h,
                          scenario.lateral_offset,
                          scenario.fixed_ankle_torque())
              .max_abs;
      const double base_norm = base.norm();
      row.l2_norm_ratio = base_norm > 0.0 ? l2.norm() / base_norm : 0.0;
      row.frontal_reachable = true;
    } catch (const UnreachableHeightError&) {
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<RedistributionSample> redistribution_sweep(
    const LegGeometry& geom, const LoadCase& load, double height,
    double lateral_offset, double ankle_lo, double ankle_hi, int samples) {
  if (samples < 2) throw InvalidInputError("need at least 2 sweep samples");
  if (!(ankle_hi > ankle_lo)) {
    throw InvalidInputError("sweep range must be non-empty");
  }
  const FrontalSetup s =
      frontal_setup(geom, load, height, lateral_offset);
  const double rhs_knee_ankle = s.tau_base[1] - s.tau_base[0];
  const double rhs_hip_knee = s.tau_base[2] - s.tau_base[1];

  const MinimaxResult opt =
      minimax_torques(geom, load, height, lateral_offset);
  const double opt_ankle = opt.torques.ankle;

  auto make_sample = [&](double ankle_torque, bool is_opt) {
    RedistributionSample sample;
    sample.ankle_torque = ankle_torque;
    const double m = ankle_torque - s.tau_base[0];
    sample.torques =
        JointTorques::from_vec(s.tau_base + Eigen::Vector3d::Constant(m));
    sample.max_abs = sample.torques.max_abs();
    sample.residual_knee_ankle =
        (sample.torques.knee - sample.torques.ankle) - rhs_knee_ankle;
    sample.residual_hip_knee =
        (sample.torques.hip - sample.torques.knee) - rhs_hip_knee;
    sample.is_optimum = is_opt;
    return sample;
  };

  std::vector<RedistributionSample> sweep;
  sweep.reserve(samples + 1);
  for (int i = 0; i < samples; ++i) {
    const double a =
        ankle_lo + (ankle_hi - ankle_lo) * static_cast<double>(i) / (samples - 1);
    sweep.push_back(make_sample(a, false));
  }
  const auto pos = std::lower_bound(
      sweep.begin(), sweep.end(), opt_ankle,
      [](const RedistributionSample& r, double a) { return r.ankle_torque < a; });
  sweep.insert(pos, make_sample(opt_ankle, true));
  return sweep;
}

}  // namespace xrl
