#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cnls/field_pair.hpp"
#include "cnls/gradientflow.hpp"
#include "cnls/grid.hpp"

namespace cnls {

struct SplitFields {
  FieldPair left;
  FieldPair right;
};

/// Sharp partition: `left` keeps nodes with x_k <= 0, `right` the rest.
SplitFields split_at_origin(const FieldPair& pair, const GridSpec& grid);

/// int |u_j|^2 per component (no 1/2 factor, unlike mass()).
std::array<double, 2> l2_masses(const FieldPair& pair, const GridSpec& grid);

struct PeakSample {
  double position = 0.0;
  double height = 0.0;
  std::size_t index = 0;
  /// The maximum is attained (within 1e-12 relative) at a non-adjacent node too.
  bool ambiguous = false;
};

/// Discrete argmax with a parabolic fit through the three surrounding nodes
/// (periodic neighbours). Ties go to the first index.
PeakSample locate_peak(std::span<const double> density, const GridSpec& grid);

/// Peak of the trigonometric interpolant of `density`, by Newton iteration
/// from the parabolic estimate.
double refine_peak(std::span<const double> density, const GridSpec& grid);

struct DensitySnapshot {
  double t = 0.0;
  RealField density1;
  RealField density2;
};

struct PeakTrajectory {
  std::vector<double> times;
  std::vector<double> positions;
  std::vector<double> heights;
  double velocity = 0.0;
  std::vector<std::string> warnings;
};

/// Least-squares slope of y against t.
double least_squares_slope(std::span<const double> t, std::span<const double> y);

/// Accumulates per-component peak samples one time level at a time, so long
/// runs need not keep full density snapshots.
class PeakTracker {
 public:
  explicit PeakTracker(const GridSpec& grid) : grid_(grid) {}

  void add(double t, std::span<const double> density1, std::span<const double> density2);
  std::size_t size() const noexcept { return trajectories_[0].times.size(); }

  /// Trajectories with velocities fitted over the last `window_fraction` of
  /// the samples (at least two). Throws ContractViolation with < 2 samples.
  std::array<PeakTrajectory, 2> finish(double window_fraction = 0.2) const;

 private:
  GridSpec grid_;
  std::array<PeakTrajectory, 2> trajectories_;
};

/// Per-component peak trajectories; velocity is the least-squares slope over
/// the last `window_fraction` of the snapshots (at least two of them).
/// Throws ContractViolation with fewer than two snapshots.
std::array<PeakTrajectory, 2> peak_track(std::span<const DensitySnapshot> snapshots,
                                         const GridSpec& grid, double window_fraction = 0.2);

/// Shifts each ground-state profile so its peak sits on the peak of
/// |u_j^-|^2 and returns sup_k | |u_j^-(x_k)|^2 - phi_j(x_k - shift)^2 |.
std::array<double, 2> compare_to_ground_state(const FieldPair& left,
                                              const GroundStateResult& ground_state,
                                              const GridSpec& grid);

struct GroundStateSummary {
  std::array<double, 2> target_masses{};
  std::array<double, 2> omegas{};
  std::size_t iterations = 0;
  std::array<double, 2> sup_density_errors{};
  std::array<double, 2> peak_densities{};
};

struct ElasticSummary {
  std::array<double, 2> predicted_shifts{};
  std::array<double, 2> fitted_shifts{};
  std::array<double, 2> sup_density_errors{};
  std::array<double, 2> peak_densities{};
};

struct CollisionReport {
  double t_final = 0.0;
  std::array<double, 2> left_masses{};
  std::array<double, 2> right_masses{};
  std::array<double, 2> peak_positions{};
  std::array<double, 2> peak_heights{};
  std::array<double, 2> velocity_estimates{};
  std::optional<GroundStateSummary> ground_state;
  std::optional<ElasticSummary> elastic;
};

}  // namespace cnls
