#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "cnls/analysis.hpp"
#include "cnls/config.hpp"
#include "cnls/diagnostics.hpp"
#include "cnls/field_pair.hpp"
#include "cnls/gradientflow.hpp"

namespace cnls {

struct ExperimentResult {
  CollisionReport report;
  FieldPair initial_state;
  FieldPair final_state;
  std::vector<DiagnosticsRecord> diagnostics;
  std::array<PeakTrajectory, 2> trajectories;
  std::optional<GroundStateResult> ground_state;
};

/// Builds the two-soliton initial data, evolves it, and analyses the final
/// state. Adds the ground-state comparison when config.groundstate is set and
/// the integrable-case prediction when mu1 = mu2 = beta. With
/// `write_outputs`, writes diagnostics.csv, snapshot_*.csv (+ snapshots.csv
/// index) and report.json into config.output.directory.
ExperimentResult run_experiment(const RunConfig& config, bool write_outputs = true);

/// Solves for the ground state with the explicit masses of
/// config.groundstate; writes groundstate.csv and groundstate.json when
/// `write_outputs`. Throws ConfigError if the block is absent or asks for
/// from-left-split.
GroundStateResult run_ground_state(const RunConfig& config, bool write_outputs = true);

struct ConvergenceStudy {
  std::vector<double> taus;
  std::vector<double> sup_errors;
  std::vector<double> orders;
  double reference_tau = 0.0;
  bool passed = false;
};

/// Evolves the configured run at tau, tau/2, tau/4 and compares with a
/// tau/64 reference; orders must all lie in [1.8, 2.2] to pass.
ConvergenceStudy run_convergence(const RunConfig& config);

/// Honours CNLS_OUTPUT_DIR, if set, as the output directory.
void apply_environment(RunConfig& config);

}  // namespace cnls
