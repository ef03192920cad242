#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnls/gradientflow.hpp"
#include "cnls/profiles.hpp"

namespace cnls {

struct GridConfig {
  double a = 20.0;
  std::size_t N = 1024;
};

struct RunSettings {
  double t0 = 0.0;
  double t_final = 0.0;
  double tau = 1e-3;
  std::size_t snapshot_stride = 1000;
  std::size_t diagnostics_stride = 100;
  double cutoff_L = 4.0;
  /// Fraction of the (diagnostics-rate) peak samples used for velocities.
  double velocity_window = 0.2;
};

struct OutputConfig {
  std::string directory = "cnls-output";
  /// Any of "csv" (diagnostics + snapshots) and "json" (report).
  std::vector<std::string> formats{"csv", "json"};

  bool wants(std::string_view format) const;
};

struct GroundStateConfig {
  /// Take a_j^2 from the left half of the final state instead of `masses`.
  bool from_left_split = false;
  MassTargets masses;
  /// Finite-difference grid; defaults derive from the masses when absent.
  std::optional<double> half_width;
  std::optional<std::size_t> intervals;
  double tau = 0.1;
  double tol = 1e-8;
  std::size_t max_iter = 100000;

  /// Options for the given targets: default half width from
  /// default_half_width() and spacing 1/16.
  GroundStateOptions options_for(const MassTargets& targets, const CoupledParams& params) const;
};

struct RunConfig {
  GridConfig grid;
  CoupledParams params;
  SolitonSpec soliton1{.component = 1};
  SolitonSpec soliton2{.component = 2};
  RunSettings run;
  OutputConfig output;
  std::optional<GroundStateConfig> groundstate;

  void validate() const;
};

/// Raw `[section]` / `key = value` document with source line numbers.
class ConfigDocument {
 public:
  struct Entry {
    std::string value;
    int line = 0;  // 0 for command-line overrides
  };

  static ConfigDocument parse(std::string_view text);

  /// Sets or replaces section.key. Throws ConfigError for unknown keys.
  void set(const std::string& section, const std::string& key, std::string value);

  /// Applies "section.key=value" (leading dashes are ignored).
  void apply_override(std::string_view assignment);

  bool has_section(const std::string& section) const;
  const Entry* find(const std::string& section, const std::string& key) const;

 private:
  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::vector<std::string> order_;
};

RunConfig build_config(const ConfigDocument& document);
RunConfig parse_config(std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

/// The four collision experiments as config files, keyed by file name.
std::map<std::string, std::string> preset_files();

}  // namespace cnls
