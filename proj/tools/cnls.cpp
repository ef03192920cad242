// Command-line driver: collision runs, ground states, integrable-case shifts,
// temporal convergence self-test and preset config files.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cnls/config.hpp"
#include "cnls/error.hpp"
#include "cnls/experiment.hpp"
#include "cnls/io.hpp"
#include "cnls/manakov.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kConfig = 2,
  kDivergence = 3,
  kNonConvergence = 4,
  kIo = 5,
};

cnls::RunConfig load(const std::string& path, const std::vector<std::string>& overrides) {
  auto doc = cnls::ConfigDocument::parse(cnls::read_text_file(path));
  for (const auto& o : overrides) doc.apply_override(o);
  auto config = cnls::build_config(doc);
  cnls::apply_environment(config);
  return config;
}

void print_array(const char* label, const std::array<double, 2>& v) {
  std::cout << "  " << label << ": " << cnls::format_double(v[0]) << ", "
            << cnls::format_double(v[1]) << '\n';
}

int cmd_run(const std::string& path, const std::vector<std::string>& overrides) {
  const auto config = load(path, overrides);
  const auto result = cnls::run_experiment(config);
  const auto& r = result.report;
  std::cout << "run finished at t = " << r.t_final << "; outputs in " << config.output.directory
            << '\n';
  print_array("left masses", r.left_masses);
  print_array("right masses", r.right_masses);
  print_array("velocity estimates", r.velocity_estimates);
  if (r.ground_state) print_array("ground-state sup errors", r.ground_state->sup_density_errors);
  if (r.elastic) {
    print_array("predicted shifts", r.elastic->predicted_shifts);
    print_array("fitted shifts", r.elastic->fitted_shifts);
  }
  for (const auto& traj : result.trajectories) {
    for (const auto& w : traj.warnings) std::cerr << "warning: " << w << '\n';
  }
  return kOk;
}

int cmd_groundstate(const std::string& path, const std::vector<std::string>& overrides) {
  const auto config = load(path, overrides);
  const auto gs = cnls::run_ground_state(config);
  std::cout << "ground state converged in " << gs.iterations << " iterations\n"
            << "  omega: " << cnls::format_double(gs.omega1) << ", "
            << cnls::format_double(gs.omega2) << '\n';
  return kOk;
}

int cmd_manakov(double omega1, double omega2, double v1, double v2) {
  const auto s = cnls::collision_shift(omega1, omega2, v1, v2);
  nlohmann::ordered_json j;
  j["chi1"] = {s.chi1.real(), s.chi1.imag()};
  j["chi2"] = {s.chi2.real(), s.chi2.imag()};
  j["tau1"] = s.tau1;
  j["tau2"] = s.tau2;
  j["theta1"] = {s.theta1.real(), s.theta1.imag()};
  j["theta2"] = {s.theta2.real(), s.theta2.imag()};
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int cmd_convergence(const std::string& path, const std::vector<std::string>& overrides) {
  const auto config = load(path, overrides);
  const auto study = cnls::run_convergence(config);
  std::cout << "reference tau = " << study.reference_tau << '\n';
  for (std::size_t i = 0; i < study.taus.size(); ++i) {
    std::cout << "tau = " << study.taus[i] << "  sup error = " << study.sup_errors[i];
    if (i > 0) std::cout << "  order = " << study.orders[i - 1];
    std::cout << '\n';
  }
  std::cout << (study.passed ? "order check passed" : "order check FAILED") << '\n';
  return study.passed ? kOk : kNonConvergence;
}

int cmd_presets(const std::string& directory) {
  std::filesystem::path dir(directory);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw cnls::IoError("cannot create '" + directory + "': " + ec.message());
  for (const auto& [name, text] : cnls::preset_files()) {
    cnls::write_text_file(dir / name, text);
    std::cout << (dir / name).string() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled nonlinear Schrodinger collision experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_dir = ".";
  double omega1 = 0.0, omega2 = 0.0, v1 = 0.0, v2 = 0.0;

  auto* run = app.add_subcommand("run", "evolve a two-soliton collision and analyse it");
  run->add_option("config", config_path, "config file")->required();
  run->allow_extras();

  auto* gs = app.add_subcommand("groundstate", "solve for the coupled ground state");
  gs->add_option("config", config_path, "config file")->required();
  gs->allow_extras();

  auto* conv = app.add_subcommand("convergence", "temporal order self-test");
  conv->add_option("config", config_path, "config file")->required();
  conv->allow_extras();

  auto* mk = app.add_subcommand("manakov", "integrable-case collision shifts as JSON");
  mk->add_option("--omega1", omega1)->required();
  mk->add_option("--omega2", omega2)->required();
  mk->add_option("--v1", v1)->required();
  mk->add_option("--v2", v2)->required();

  auto* presets = app.add_subcommand("presets", "write the four experiment config files");
  presets->add_option("directory", preset_dir, "target directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(config_path, run->remaining());
    if (*gs) return cmd_groundstate(config_path, gs->remaining());
    if (*conv) return cmd_convergence(config_path, conv->remaining());
    if (*mk) return cmd_manakov(omega1, omega2, v1, v2);
    if (*presets) return cmd_presets(preset_dir);
  } catch (const cnls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const cnls::DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << " (last good t = " << e.last_good_time() << ")\n";
    return kDivergence;
  } catch (const cnls::ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const cnls::StepFailure& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const cnls::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const cnls::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}
