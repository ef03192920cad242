#include "cnls/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "cnls/error.hpp"
#include "cnls/io.hpp"
#include "cnls/manakov.hpp"
#include "cnls/profiles.hpp"
#include "cnls/splitstep.hpp"

namespace cnls {

namespace {

std::filesystem::path prepare_directory(const std::string& directory) {
  std::filesystem::path dir(directory);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + directory + "': " + ec.message());
  return dir;
}

std::string snapshot_name(std::size_t step) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "snapshot_%08zu.csv", step);
  return buf;
}

double max_of(std::span<const double> v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

void write_ground_state(const std::filesystem::path& dir, const GroundStateResult& gs) {
  std::ostringstream csv;
  csv << "x,phi1,phi2\n";
  for (std::size_t k = 0; k < gs.phi1.size(); ++k) {
    csv << format_double(gs.grid.node(k)) << ',' << format_double(gs.phi1[k]) << ','
        << format_double(gs.phi2[k]) << '\n';
  }
  write_text_file(dir / "groundstate.csv", csv.str());

  nlohmann::ordered_json j;
  j["omega_1"] = gs.omega1;
  j["omega_2"] = gs.omega2;
  j["iterations"] = gs.iterations;
  j["residual"] = gs.residual;
  j["half_width"] = gs.grid.half_width;
  j["intervals"] = gs.grid.intervals;
  j["final_energy"] = gs.energy_trace.empty() ? 0.0 : gs.energy_trace.back();
  write_text_file(dir / "groundstate.json", j.dump(2) + "\n");
}

}  // namespace

void apply_environment(RunConfig& config) {
  if (const char* dir = std::getenv("CNLS_OUTPUT_DIR"); dir && *dir) {
    config.output.directory = dir;
  }
}

ExperimentResult run_experiment(const RunConfig& config, bool write_outputs) {
  config.validate();
  const GridSpec grid(config.grid.a, config.grid.N);
  const FieldPair initial =
      initial_data(config.soliton1, config.soliton2, config.params, config.run.t0, grid);

  const bool write_csv = write_outputs && config.output.wants("csv");
  const bool write_json = write_outputs && config.output.wants("json");
  std::filesystem::path dir;
  if (write_csv || write_json) dir = prepare_directory(config.output.directory);

  ExperimentResult result;
  result.initial_state = initial;
  PeakTracker tracker(grid);

  // Writer objects are owned by the background thread's jobs through
  // shared_ptr so the stepping loop never touches the file streams.
  std::unique_ptr<BackgroundWriter> writer;
  std::shared_ptr<DiagnosticsCsvWriter> diag_csv;
  std::shared_ptr<std::ofstream> index_csv;
  if (write_csv) {
    writer = std::make_unique<BackgroundWriter>();
    diag_csv = std::make_shared<DiagnosticsCsvWriter>(dir / "diagnostics.csv");
    index_csv = std::make_shared<std::ofstream>(dir / "snapshots.csv");
    if (!*index_csv) throw IoError("cannot open snapshot index in '" + dir.string() + "'");
    *index_csv << "step,t,file\n";
  }

  EvolveConfig evolve_config;
  evolve_config.tau = config.run.tau;
  evolve_config.t_final = config.run.t_final;
  evolve_config.snapshot_stride = write_csv ? config.run.snapshot_stride : 0;
  evolve_config.diagnostics_stride = config.run.diagnostics_stride;

  EvolveSinks sinks;
  sinks.diagnostics = [&](const FieldPair& state, std::size_t) {
    const DiagnosticsRecord rec =
        compute_diagnostics(state, config.params, grid, config.run.cutoff_L);
    result.diagnostics.push_back(rec);
    tracker.add(state.t, density(state.u1), density(state.u2));
    if (writer) writer->submit([diag_csv, rec] { diag_csv->write(rec); });
  };
  if (write_csv) {
    sinks.snapshot = [&](const FieldPair& state, std::size_t step) {
      auto copy = std::make_shared<FieldPair>(state);
      const std::string name = snapshot_name(step);
      writer->submit([copy, name, step, dir, grid, index_csv] {
        write_snapshot_csv(dir / name, *copy, grid);
        *index_csv << step << ',' << format_double(copy->t) << ',' << name << '\n';
      });
    };
  }

  result.final_state = evolve(initial, config.params, grid, evolve_config, sinks);

  CollisionReport& report = result.report;
  const FieldPair& final_state = result.final_state;
  report.t_final = final_state.t;
  const SplitFields halves = split_at_origin(final_state, grid);
  const auto left = l2_masses(halves.left, grid);
  const auto right = l2_masses(halves.right, grid);
  for (int j : {1, 2}) {
    report.left_masses[j - 1] = left[j - 1];
    report.right_masses[j - 1] = right[j - 1];
    const PeakSample peak = locate_peak(density(final_state.component(j)), grid);
    report.peak_positions[j - 1] = peak.position;
    report.peak_heights[j - 1] = peak.height;
  }
  if (tracker.size() >= 2) {
    result.trajectories = tracker.finish(config.run.velocity_window);
    for (int j : {0, 1}) report.velocity_estimates[j] = result.trajectories[j].velocity;
  }

  if (config.groundstate) {
    const GroundStateConfig& g = *config.groundstate;
    const MassTargets targets =
        g.from_left_split ? MassTargets{left[0], left[1]} : g.masses;
    result.ground_state =
        solve_ground_state(config.params, targets, g.options_for(targets, config.params));
    GroundStateSummary summary;
    summary.target_masses = {targets.a1_sq, targets.a2_sq};
    summary.omegas = {result.ground_state->omega1, result.ground_state->omega2};
    summary.iterations = result.ground_state->iterations;
    summary.sup_density_errors = compare_to_ground_state(halves.left, *result.ground_state, grid);
    summary.peak_densities = {max_of(density(halves.left.u1)), max_of(density(halves.left.u2))};
    report.ground_state = summary;
  }

  if (config.params.integrable()) {
    const SolitonSpec& s1 = config.soliton1;
    const SolitonSpec& s2 = config.soliton2;
    const ManakovShift shift = collision_shift(s1.omega, s2.omega, s1.v, s2.v);
    const FieldPair predicted =
        predicted_outgoing(shift, s1, s2, final_state.t, grid, config.params.mu1);
    const ElasticComparison cmp = elastic_error(final_state, predicted, grid);
    ElasticSummary summary;
    for (int j : {1, 2}) {
      summary.predicted_shifts[j - 1] = shift.tau(j);
      summary.fitted_shifts[j - 1] = shift.tau(j) + cmp.fitted_offset[j - 1];
      summary.sup_density_errors[j - 1] = cmp.sup_density_error[j - 1];
      summary.peak_densities[j - 1] = max_of(density(predicted.component(j)));
    }
    report.elastic = summary;
  }

  if (writer) {
    writer->submit([diag_csv, index_csv] {
      diag_csv->close();
      index_csv->close();
      if (index_csv->fail()) throw IoError("failed writing snapshot index");
    });
    writer->finish();
  }
  if (write_json) {
    write_text_file(dir / "report.json", report_to_json(report));
    if (result.ground_state) write_ground_state(dir, *result.ground_state);
  }
  return result;
}

GroundStateResult run_ground_state(const RunConfig& config, bool write_outputs) {
  if (!config.groundstate) throw ConfigError("missing section [groundstate]");
  const GroundStateConfig& g = *config.groundstate;
  if (g.from_left_split) {
    throw ConfigError(
        "groundstate.masses = from-left-split needs a collision run; use 'run' or give "
        "explicit masses");
  }
  GroundStateResult gs =
      solve_ground_state(config.params, g.masses, g.options_for(g.masses, config.params));
  if (write_outputs) write_ground_state(prepare_directory(config.output.directory), gs);
  return gs;
}

ConvergenceStudy run_convergence(const RunConfig& config) {
  config.validate();
  const GridSpec grid(config.grid.a, config.grid.N);
  const FieldPair initial =
      initial_data(config.soliton1, config.soliton2, config.params, config.run.t0, grid);

  auto solve = [&](double tau) {
    EvolveConfig ec;
    ec.tau = tau;
    ec.t_final = config.run.t_final;
    ec.snapshot_stride = 0;
    ec.diagnostics_stride = 0;
    return evolve(initial, config.params, grid, ec);
  };

  ConvergenceStudy study;
  study.reference_tau = config.run.tau / 64.0;
  const FieldPair reference = solve(study.reference_tau);
  for (double tau : {config.run.tau, config.run.tau / 2.0, config.run.tau / 4.0}) {
    const FieldPair approx = solve(tau);
    const double err = std::max(error_norms(approx.u1, reference.u1, grid).sup,
                                error_norms(approx.u2, reference.u2, grid).sup);
    study.taus.push_back(tau);
    study.sup_errors.push_back(err);
  }
  study.passed = true;
  for (std::size_t i = 1; i < study.sup_errors.size(); ++i) {
    const double p = observed_order(study.sup_errors[i - 1], study.sup_errors[i]);
    study.orders.push_back(p);
    if (!(p >= 1.8 && p <= 2.2)) study.passed = false;
  }
  return study;
}

}  // namespace cnls
