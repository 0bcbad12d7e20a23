#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "xrl/config.hpp"

namespace xrl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitInfeasible = 3;

/// One line of the reference-reconciliation report: a published design value
/// against the value this toolkit computes.
struct ReconRow {
  std::string name;
  double reference = 0.0;
  double computed = 0.0;
  double rel_error = 0.0;
  std::string status;  // exact-match | within-tolerance | inferred-geometry | mismatch
  std::string note;
};

std::vector<ReconRow> reconciliation_rows(const ScenarioConfig& config);

/// Joint torque peaks feeding the actuation sizing: elementwise max of the
/// stair-climb peaks and the frontal-minimax squat profile peaks.
std::vector<JointPeak> sizing_peaks(const ScenarioConfig& config);

// Command entry points. Each writes its files under config.output_dir and
// returns a process exit code (0 ok, 3 infeasible scenario).
int cmd_squat(const ScenarioConfig& config);
int cmd_redistribute(const ScenarioConfig& config, double height);
int cmd_stairs(const ScenarioConfig& config);
int cmd_actuation(const ScenarioConfig& config);
int cmd_reconcile(const ScenarioConfig& config);
int cmd_all(const ScenarioConfig& config, double redistribute_height);

/// Fixed-width numeric formatting used in every output file: 6 significant
/// digits, C locale, so identical configs produce byte-identical outputs.
std::string format_number(double v);

}  // namespace xrl
