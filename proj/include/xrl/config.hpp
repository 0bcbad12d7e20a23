#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "xrl/actuation.hpp"
#include "xrl/model.hpp"
#include "xrl/stairs.hpp"
#include "xrl/statics.hpp"

namespace xrl {

/// Full analysis scenario as read from a config file. All values SI.
struct ScenarioConfig {
  Anthropometrics anthro;
  double stance_width = 0.61;  // frontal squat ankle spacing, m

  double robot_mass = 36.3;     // kg
  double payload_mass = 22.7;   // kg
  double assist_force = 222.4;  // N
  double assist_moment_arm = kDefaultAssistMomentArm;  // m

  double stair_height = 0.203;  // m
  double forward_lean = 0.20;   // m

  MotorSpec motor;
  std::vector<JointDrive> drives = {
      {"hip", 2, 3.74, true},
      {"knee", 2, 3.74, true},
      {"ankle", 2, 3.74, true},
  };

  int sweep_samples = 200;
  std::string output_dir = "out";

  void validate() const;

  LegGeometry leg_geometry() const { return solve_link_lengths(anthro); }
  double lateral_offset() const {
    return 0.5 * (stance_width - anthro.hip_width);
  }
  LoadCase squat_load() const {
    return make_load_case(ScenarioKind::kSquat, robot_mass, payload_mass,
                          assist_force, assist_moment_arm);
  }
  LoadCase stair_load() const {
    return make_load_case(ScenarioKind::kStair, robot_mass, payload_mass, 0.0);
  }
  SquatScenario squat_scenario() const {
    return {leg_geometry(), squat_load(), lateral_offset(),
            anthro.foot_width};
  }
  StairScenario stair_scenario() const {
    return {stair_height, forward_lean, anthro.hip_width, stair_load()};
  }
};

/// Loads and validates a config file. Invariant violations are reported with
/// the offending field path.
ScenarioConfig load_config(const std::filesystem::path& path);

ScenarioConfig parse_config(const std::string& text);
std::string serialize_config(const ScenarioConfig& config);
void save_config(const ScenarioConfig& config,
                 const std::filesystem::path& path);

}  // namespace xrl
