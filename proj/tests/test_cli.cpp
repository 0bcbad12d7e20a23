#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "xrl/commands.hpp"
#include "xrl/config.hpp"

using namespace xrl;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("xrl_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string first_line(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);
  return line;
}

int count_rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  int rows = -1;  // don't count the header
  while (std::getline(in, line)) ++rows;
  return rows;
}

}  // namespace

TEST_CASE("config round-trips through serialization") {
  ScenarioConfig cfg;
  cfg.stance_width = 0.55;
  cfg.payload_mass = 40.0;
  cfg.sweep_samples = 37;
  cfg.drives = {{"knee", 1, 8.0, false}};
  cfg.output_dir = "elsewhere";

  const ScenarioConfig back = parse_config(serialize_config(cfg));
  CHECK(back.stance_width == cfg.stance_width);
  CHECK(back.payload_mass == cfg.payload_mass);
  CHECK(back.sweep_samples == cfg.sweep_samples);
  CHECK(back.output_dir == cfg.output_dir);
  REQUIRE(back.drives.size() == 1);
  CHECK(back.drives[0].joint == "knee");
  CHECK(back.drives[0].motors_per_joint == 1);
  CHECK(back.drives[0].gear_ratio == 8.0);
  CHECK_FALSE(back.drives[0].differential);
  CHECK(serialize_config(back) == serialize_config(cfg));
}

TEST_CASE("missing sections fall back to defaults") {
  const ScenarioConfig cfg = parse_config("{}");
  const ScenarioConfig defaults;
  CHECK(cfg.anthro.standing_attach_height ==
        defaults.anthro.standing_attach_height);
  CHECK(cfg.robot_mass == defaults.robot_mass);
  CHECK(cfg.drives.size() == defaults.drives.size());
}

TEST_CASE("config errors carry the offending field path") {
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);

  auto message_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("(no error)");
  };

  CHECK(message_of(R"({"loads": {"robot_mass_kg": -1}})")
            .find("loads.robot_mass_kg") != std::string::npos);
  CHECK(message_of(R"({"loads": {"robot_mass_kg": "heavy"}})")
            .find("loads.robot_mass_kg") != std::string::npos);
  CHECK(message_of(R"({"stairs": {"stair_height_m": 0}})")
            .find("stairs.stair_height_m") != std::string::npos);
  CHECK(message_of(R"({"drives": [{"joint": "elbow"}]})")
            .find("drives[elbow].joint") != std::string::npos);
  CHECK(message_of(
            R"({"drives": [{"joint": "knee", "gear_ratio": 12, "motors": 2}]})")
            .find("drives[knee].gear_ratio") != std::string::npos);
  CHECK(message_of(R"({"anthropometrics": {"stance_width_m": 0.1}})")
            .find("stance_width_m") != std::string::npos);
}

TEST_CASE("load_config rejects missing files") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("squat command writes the four profiles and the comparison") {
  ScenarioConfig cfg;
  cfg.sweep_samples = 40;
  const fs::path dir = fresh_dir("squat");
  cfg.output_dir = dir.string();
  CHECK(cmd_squat(cfg) == kExitOk);

  const std::string profile_header =
      "height_m,tau_hip_nm,tau_knee_nm,tau_ankle_nm,fy_n,m_nm,"
      "max_abs_tau_nm,l2_norm_nm";
  for (const char* name :
       {"squat_sagittal.csv", "squat_frontal_l2.csv",
        "squat_frontal_minimax.csv", "squat_frontal_fixed_ankle.csv"}) {
    CHECK(first_line(dir / name) == profile_header);
    CHECK(count_rows(dir / name) == cfg.sweep_samples);
  }
  CHECK(first_line(dir / "comparison.csv") ==
        "height_m,sagittal_max_abs_nm,frontal_l2_max_abs_nm,"
        "frontal_minimax_max_abs_nm,frontal_fixed_ankle_max_abs_nm,"
        "l2_norm_ratio");
  CHECK(count_rows(dir / "comparison.csv") == cfg.sweep_samples);
}

TEST_CASE("redistribute command writes the sweep with one marked optimum") {
  ScenarioConfig cfg;
  cfg.sweep_samples = 25;
  const fs::path dir = fresh_dir("redistribute");
  cfg.output_dir = dir.string();
  CHECK(cmd_redistribute(cfg, 1.0) == kExitOk);

  const fs::path file = dir / "redistribution_1.csv";
  CHECK(first_line(file) ==
        "free_param_nm,tau_hip_nm,tau_knee_nm,tau_ankle_nm,max_abs_tau_nm,"
        "residual_knee_ankle_nm,residual_hip_knee_nm,is_optimum");
  CHECK(count_rows(file) == cfg.sweep_samples + 1);

  int marked = 0;
  std::istringstream in(slurp(file));
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.size() >= 2 && line.substr(line.size() - 2) == ",1") ++marked;
  }
  CHECK(marked == 1);
}

TEST_CASE("redistribute above the reachable band reports infeasible") {
  ScenarioConfig cfg;
  const fs::path dir = fresh_dir("redistribute_bad");
  cfg.output_dir = dir.string();
  CHECK(cmd_redistribute(cfg, 5.0) == kExitInfeasible);
}

TEST_CASE("stairs command writes peaks and the knee sweep") {
  ScenarioConfig cfg;
  cfg.sweep_samples = 30;
  const fs::path dir = fresh_dir("stairs");
  cfg.output_dir = dir.string();
  CHECK(cmd_stairs(cfg) == kExitOk);

  const std::string stairs = slurp(dir / "stairs.csv");
  CHECK(stairs.find("quantity,value_nm") == 0);
  CHECK(stairs.find("knee_peak,") != std::string::npos);
  CHECK(stairs.find("ankle_peak,") != std::string::npos);
  CHECK(stairs.find("hip_peak,") != std::string::npos);

  CHECK(first_line(dir / "stairs_knee_sweep.csv") ==
        "hip_height_m,tau_knee_nm");
  CHECK(count_rows(dir / "stairs_knee_sweep.csv") == cfg.sweep_samples);
}

TEST_CASE("stairs command with an impossible riser reports infeasible") {
  ScenarioConfig cfg;
  cfg.stair_height = 2.0;
  const fs::path dir = fresh_dir("stairs_bad");
  cfg.output_dir = dir.string();
  CHECK(cmd_stairs(cfg) == kExitInfeasible);
}

TEST_CASE("actuation command reports every configured drive") {
  ScenarioConfig cfg;
  cfg.sweep_samples = 30;
  const fs::path dir = fresh_dir("actuation");
  cfg.output_dir = dir.string();
  CHECK(cmd_actuation(cfg) == kExitOk);

  const fs::path file = dir / "actuation_report.csv";
  CHECK(first_line(file) ==
        "joint,peak_torque_nm,motors,gear_ratio,required_ratio,"
        "required_current_a,continuous_margin,within_continuous,within_peak,"
        "ratio_ok,multi_stage_risk,feasible");
  CHECK(count_rows(file) == 3);

  // No drives configured: header-only report.
  cfg.drives.clear();
  const fs::path dir2 = fresh_dir("actuation_empty");
  cfg.output_dir = dir2.string();
  CHECK(cmd_actuation(cfg) == kExitOk);
  CHECK(count_rows(dir2 / "actuation_report.csv") == 0);
}

TEST_CASE("reconciliation covers every published anchor") {
  const ScenarioConfig cfg;
  const auto rows = reconciliation_rows(cfg);
  CHECK(rows.size() == 12);
  for (const auto& row : rows) {
    CAPTURE(row.name);
    CHECK(row.status != "mismatch");
    if (row.status == "inferred-geometry") {
      CHECK(row.rel_error <= 1e-2);
    } else {
      CHECK(row.rel_error <= 1e-3);
    }
  }

  const fs::path dir = fresh_dir("reconcile");
  ScenarioConfig file_cfg;
  file_cfg.output_dir = dir.string();
  CHECK(cmd_reconcile(file_cfg) == kExitOk);
  const std::string report = slurp(dir / "reconciliation.md");
  for (const char* anchor : {"800.7", "578.3", "307", "-93.4", "30.5", "168",
                             "115.6", "102.8", "22.5", "7.47"}) {
    CAPTURE(anchor);
    CHECK(report.find(anchor) != std::string::npos);
  }
}

TEST_CASE("identical configs produce byte-identical outputs") {
  ScenarioConfig cfg;
  cfg.sweep_samples = 25;

  const fs::path a = fresh_dir("determinism_a");
  const fs::path b = fresh_dir("determinism_b");
  cfg.output_dir = a.string();
  CHECK(cmd_all(cfg, 1.0) == kExitOk);
  cfg.output_dir = b.string();
  CHECK(cmd_all(cfg, 1.0) == kExitOk);

  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    const fs::path other = b / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
  }
  CHECK(files == 10);
}
