#include "xrl/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace xrl {

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& section,
                  const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    throw ConfigError(section + "." + key + ": expected a number");
  }
  return j.at(key).get<double>();
}

}  // namespace

void ScenarioConfig::validate() const {
  try {
    anthro.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("anthropometrics: ") + e.what());
  }
  if (!(stance_width > anthro.hip_width)) {
    throw ConfigError(
        "anthropometrics.stance_width_m: must exceed hip_width_m");
  }
  if (robot_mass < 0.0) throw ConfigError("loads.robot_mass_kg: must be >= 0");
  if (payload_mass < 0.0) {
    throw ConfigError("loads.payload_mass_kg: must be >= 0");
  }
  if (assist_force < 0.0) {
    throw ConfigError("loads.assist_force_n: must be >= 0");
  }
  if (assist_moment_arm < 0.0) {
    throw ConfigError("loads.assist_moment_arm_m: must be >= 0");
  }
  if (!(stair_height > 0.0)) {
    throw ConfigError("stairs.stair_height_m: must be > 0");
  }
  if (forward_lean < 0.0) {
    throw ConfigError("stairs.forward_lean_m: must be >= 0");
  }
  try {
    motor.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("motor: ") + e.what());
  }
  for (const JointDrive& d : drives) {
    const std::string where = "drives[" + d.joint + "]";
    if (d.joint != "hip" && d.joint != "knee" && d.joint != "ankle") {
      throw ConfigError(where + ".joint: must be hip, knee or ankle");
    }
    if (d.motors_per_joint != 1 && d.motors_per_joint != 2) {
      throw ConfigError(where + ".motors: must be 1 or 2");
    }
    if (!(d.gear_ratio >= 1.0)) {
      throw ConfigError(where + ".gear_ratio: must be >= 1");
    }
    if (d.gear_ratio > kMaxGearRatio) {
      throw ConfigError(where + ".gear_ratio: must be <= 10 (near-direct-drive)");
    }
  }
  if (sweep_samples < 2) {
    throw ConfigError("sweep.samples: must be >= 2");
  }
  if (output_dir.empty()) {
    throw ConfigError("output_dir: must not be empty");
  }
}

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ScenarioConfig cfg;
  if (j.contains("anthropometrics")) {
    const json& a = j.at("anthropometrics");
    cfg.anthro.standing_attach_height =
        get_number(a, "anthropometrics", "standing_attach_height_m",
                   cfg.anthro.standing_attach_height);
    cfg.anthro.crawling_attach_height =
        get_number(a, "anthropometrics", "crawling_attach_height_m",
                   cfg.anthro.crawling_attach_height);
    cfg.anthro.hip_width =
        get_number(a, "anthropometrics", "hip_width_m", cfg.anthro.hip_width);
    cfg.anthro.foot_width =
        get_number(a, "anthropometrics", "foot_width_m", cfg.anthro.foot_width);
    cfg.stance_width =
        get_number(a, "anthropometrics", "stance_width_m", cfg.stance_width);
  }
  if (j.contains("loads")) {
    const json& l = j.at("loads");
    cfg.robot_mass = get_number(l, "loads", "robot_mass_kg", cfg.robot_mass);
    cfg.payload_mass =
        get_number(l, "loads", "payload_mass_kg", cfg.payload_mass);
    cfg.assist_force =
        get_number(l, "loads", "assist_force_n", cfg.assist_force);
    cfg.assist_moment_arm =
        get_number(l, "loads", "assist_moment_arm_m", cfg.assist_moment_arm);
  }
  if (j.contains("stairs")) {
    const json& s = j.at("stairs");
    cfg.stair_height = get_number(s, "stairs", "stair_height_m", cfg.stair_height);
    cfg.forward_lean = get_number(s, "stairs", "forward_lean_m", cfg.forward_lean);
  }
  if (j.contains("motor")) {
    const json& m = j.at("motor");
    cfg.motor.torque_constant = get_number(m, "motor", "torque_constant_nm_per_a",
                                           cfg.motor.torque_constant);
    cfg.motor.max_continuous_current = get_number(
        m, "motor", "max_continuous_current_a", cfg.motor.max_continuous_current);
    cfg.motor.max_peak_current =
        get_number(m, "motor", "max_peak_current_a", cfg.motor.max_peak_current);
    cfg.motor.mass = get_number(m, "motor", "mass_kg", cfg.motor.mass);
  }
  if (j.contains("drives")) {
    if (!j.at("drives").is_array()) {
      throw ConfigError("drives: expected an array");
    }
    cfg.drives.clear();
    for (const json& d : j.at("drives")) {
      JointDrive drive;
      if (!d.contains("joint") || !d.at("joint").is_string()) {
        throw ConfigError("drives[].joint: expected a string");
      }
      drive.joint = d.at("joint").get<std::string>();
      drive.motors_per_joint = static_cast<int>(
          get_number(d, "drives[" + drive.joint + "]", "motors", 2));
      drive.gear_ratio =
          get_number(d, "drives[" + drive.joint + "]", "gear_ratio", 1.0);
      drive.differential = d.value("differential", drive.motors_per_joint == 2);
      cfg.drives.push_back(drive);
    }
  }
  if (j.contains("sweep")) {
    cfg.sweep_samples = static_cast<int>(
        get_number(j.at("sweep"), "sweep", "samples", cfg.sweep_samples));
  }
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) {
      throw ConfigError("output_dir: expected a string");
    }
    cfg.output_dir = j.at("output_dir").get<std::string>();
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  json j;
  j["anthropometrics"] = {
      {"standing_attach_height_m", cfg.anthro.standing_attach_height},
      {"crawling_attach_height_m", cfg.anthro.crawling_attach_height},
      {"hip_width_m", cfg.anthro.hip_width},
      {"foot_width_m", cfg.anthro.foot_width},
      {"stance_width_m", cfg.stance_width},
  };
  j["loads"] = {
      {"robot_mass_kg", cfg.robot_mass},
      {"payload_mass_kg", cfg.payload_mass},
      {"assist_force_n", cfg.assist_force},
      {"assist_moment_arm_m", cfg.assist_moment_arm},
  };
  j["stairs"] = {
      {"stair_height_m", cfg.stair_height},
      {"forward_lean_m", cfg.forward_lean},
  };
  j["motor"] = {
      {"torque_constant_nm_per_a", cfg.motor.torque_constant},
      {"max_continuous_current_a", cfg.motor.max_continuous_current},
      {"max_peak_current_a", cfg.motor.max_peak_current},
      {"mass_kg", cfg.motor.mass},
  };
  j["drives"] = json::array();
  for (const JointDrive& d : cfg.drives) {
    j["drives"].push_back({
        {"joint", d.joint},
        {"motors", d.motors_per_joint},
        {"gear_ratio", d.gear_ratio},
        {"differential", d.differential},
    });
  }
  j["sweep"] = {{"samples", cfg.sweep_samples}};
  j["output_dir"] = cfg.output_dir;
  return j.dump(2) + "\n";
}

void save_config(const ScenarioConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write config file: " + path.string());
  }
  out << serialize_config(cfg);
}

}  // namespace xrl
