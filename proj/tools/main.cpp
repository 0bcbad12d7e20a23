#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "xrl/commands.hpp"
#include "xrl/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "xrl: static torque analysis and actuator sizing for a payload-bearing "
      "pair of planar robotic legs"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int samples = 0;
  app.add_option("--config", config_path, "scenario config file (JSON)");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--samples", samples, "sweep sample count (overrides config)");

  CLI::App* squat = app.add_subcommand(
      "squat", "squat torque sweeps for every strategy plus comparison table");
  CLI::App* redistribute = app.add_subcommand(
      "redistribute", "torque redistribution sweep at one hip height");
  double height = 1.0;
  redistribute->add_option("--height", height, "hip height [m]")
      ->capture_default_str();
  CLI::App* stairs =
      app.add_subcommand("stairs", "stair-climb worst-case torque peaks");
  CLI::App* actuation =
      app.add_subcommand("actuation", "motor and gear-ratio feasibility report");
  CLI::App* reconcile = app.add_subcommand(
      "reconcile", "reconciliation report against published reference values");
  CLI::App* all = app.add_subcommand("all", "run every analysis");
  all->add_option("--height", height, "redistribution hip height [m]")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    xrl::ScenarioConfig config;
    if (!config_path.empty()) config = xrl::load_config(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (samples > 0) config.sweep_samples = samples;
    config.validate();

    if (squat->parsed()) return xrl::cmd_squat(config);
    if (redistribute->parsed()) return xrl::cmd_redistribute(config, height);
    if (stairs->parsed()) return xrl::cmd_stairs(config);
    if (actuation->parsed()) return xrl::cmd_actuation(config);
    if (reconcile->parsed()) return xrl::cmd_reconcile(config);
    if (all->parsed()) return xrl::cmd_all(config, height);
  } catch (const xrl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return xrl::kExitConfigError;
  } catch (const xrl::UnreachableHeightError& e) {
    std::cerr << "infeasible scenario: " << e.what() << '\n';
    return xrl::kExitInfeasible;
  } catch (const xrl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
