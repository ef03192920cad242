#include "cnls/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cnls/error.hpp"

namespace cnls {

namespace {

double parabolic_vertex(double lo, double mid, double hi) {
  const double curvature = lo - 2.0 * mid + hi;
  if (curvature >= 0.0) return 0.0;
  return std::clamp(0.5 * (lo - hi) / curvature, -0.5, 0.5);
}

std::size_t argmax(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

// Newton iteration for a critical point of a smooth function near `guess`,
// with steps capped at `max_step` and a fallback to the guess if it wanders.
template <typename Derivative, typename Second>
double newton_peak(double guess, double max_step, Derivative&& d1, Second&& d2) {
  double x = guess;
  for (int it = 0; it < 30; ++it) {
    const double curvature = d2(x);
    if (!(curvature < 0.0)) break;
    const double step = std::clamp(-d1(x) / curvature, -max_step, max_step);
    x += step;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) break;
  }
  return std::abs(x - guess) <= 2.0 * max_step ? x : guess;
}

}  // namespace

SplitFields split_at_origin(const FieldPair& pair, const GridSpec& grid) {
  if (pair.size() != grid.size()) throw ContractViolation("split: field size mismatch");
  SplitFields out{FieldPair::zeros(grid.size(), pair.t), FieldPair::zeros(grid.size(), pair.t)};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    FieldPair& side = grid.node(k) <= 0.0 ? out.left : out.right;
    side.u1[k] = pair.u1[k];
    side.u2[k] = pair.u2[k];
  }
  return out;
}

std::array<double, 2> l2_masses(const FieldPair& pair, const GridSpec& grid) {
  return {quadrature(density(pair.u1), grid), quadrature(density(pair.u2), grid)};
}

PeakSample locate_peak(std::span<const double> density, const GridSpec& grid) {
  const std::size_t n = grid.size();
  if (density.size() != n) throw ContractViolation("peak: density size mismatch");
  PeakSample peak;
  const std::size_t i = argmax(density);
  const double top = density[i];
  const double lo = density[(i + n - 1) % n];
  const double hi = density[(i + 1) % n];

  const double tie = 1e-12 * std::max(std::abs(top), std::numeric_limits<double>::min());
  for (std::size_t k = 0; k < n; ++k) {
    const bool adjacent = k == i || k == (i + 1) % n || k == (i + n - 1) % n;
    if (!adjacent && top - density[k] <= tie) {
      peak.ambiguous = true;
      break;
    }
  }

  const double offset = parabolic_vertex(lo, top, hi);
  peak.index = i;
  peak.position = grid.node(i) + offset * grid.spacing();
  peak.height = top - 0.25 * (lo - hi) * offset;
  return peak;
}

double refine_peak(std::span<const double> density, const GridSpec& grid) {
  const PeakSample coarse = locate_peak(density, grid);
  const TrigInterpolant f(density, grid);
  return newton_peak(
      coarse.position, grid.spacing(), [&](double x) { return f.derivative(x); },
      [&](double x) { return f.second_derivative(x); });
}

double least_squares_slope(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size() || t.size() < 2) {
    throw ContractViolation("slope fit needs at least two paired samples");
  }
  const auto n = static_cast<double>(t.size());
  double tm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    tm += t[i];
    ym += y[i];
  }
  tm /= n;
  ym /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    num += (t[i] - tm) * (y[i] - ym);
    den += (t[i] - tm) * (t[i] - tm);
  }
  if (den == 0.0) throw ContractViolation("slope fit needs distinct sample times");
  return num / den;
}

void PeakTracker::add(double t, std::span<const double> density1,
                      std::span<const double> density2) {
  for (int j : {1, 2}) {
    const PeakSample p = locate_peak(j == 1 ? density1 : density2, grid_);
    PeakTrajectory& traj = trajectories_[j - 1];
    traj.times.push_back(t);
    traj.positions.push_back(p.position);
    traj.heights.push_back(p.height);
    if (p.ambiguous) {
      std::ostringstream msg;
      msg << "ambiguous peak in component " << j << " at t = " << t
          << "; first maximal node used";
      traj.warnings.push_back(msg.str());
    }
  }
}

std::array<PeakTrajectory, 2> PeakTracker::finish(double window_fraction) const {
  const std::size_t total = size();
  if (total < 2) throw ContractViolation("peak tracking needs at least two snapshots");
  if (!(window_fraction > 0.0) || window_fraction > 1.0) {
    throw ContractViolation("velocity window fraction must lie in (0, 1]");
  }
  const auto window = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(total))));
  const std::size_t first = total - std::min(window, total);
  std::array<PeakTrajectory, 2> out = trajectories_;
  for (PeakTrajectory& traj : out) {
    traj.velocity = least_squares_slope(std::span(traj.times).subspan(first),
                                        std::span(traj.positions).subspan(first));
  }
  return out;
}

std::array<PeakTrajectory, 2> peak_track(std::span<const DensitySnapshot> snapshots,
                                         const GridSpec& grid, double window_fraction) {
  PeakTracker tracker(grid);
  for (const DensitySnapshot& snap : snapshots) tracker.add(snap.t, snap.density1, snap.density2);
  return tracker.finish(window_fraction);
}

std::array<double, 2> compare_to_ground_state(const FieldPair& left,
                                              const GroundStateResult& ground_state,
                                              const GridSpec& grid) {
  if (left.size() != grid.size()) throw ContractViolation("comparison: field size mismatch");
  const FdGrid& fd = ground_state.grid;
  std::array<double, 2> errors{};
  for (int j : {1, 2}) {
    const RealField target = density(left.component(j));
    const double target_peak = refine_peak(target, grid);

    const RealField& phi = j == 1 ? ground_state.phi1 : ground_state.phi2;
    const SineSeriesProfile profile(fd, phi);
    const std::size_t i = argmax(phi);
    const double phi_peak = newton_peak(
        fd.node(i), fd.spacing(), [&](double x) { return profile.derivative(x); },
        [&](double x) { return profile.second_derivative(x); });

    const RealField shifted = profile.sample(grid.nodes(), target_peak - phi_peak);
    double worst = 0.0;
    for (std::size_t k = 0; k < target.size(); ++k) {
      worst = std::max(worst, std::abs(target[k] - shifted[k] * shifted[k]));
    }
    errors[j - 1] = worst;
  }
  return errors;
}

}  // namespace cnls
