#include "cnls/manakov.hpp"

#include <algorithm>
#include <cmath>

#include "cnls/error.hpp"

namespace cnls {

namespace {

// Vertex offset in (-1, 1) of the parabola through (-1, lo), (0, mid), (1, hi).
double parabolic_vertex(double lo, double mid, double hi) {
  const double curvature = lo - 2.0 * mid + hi;
  if (curvature >= 0.0) return 0.0;
  return std::clamp(0.5 * (lo - hi) / curvature, -1.0, 1.0);
}

}  // namespace

ManakovShift collision_shift(double omega1, double omega2, double v1, double v2) {
  if (!(omega1 > 0.0) || !(omega2 > 0.0)) {
    throw DomainError("collision shift requires omega1, omega2 > 0");
  }
  const double s1 = std::sqrt(omega1);
  const double s2 = std::sqrt(omega2);
  const double dv = v1 - v2;
  const Complex numerator(dv, 2.0 * (s1 + s2));
  const Complex denominator1(dv, 2.0 * (s1 - s2));
  const Complex denominator2(dv, -2.0 * (s1 - s2));
  if (std::abs(denominator1) == 0.0) {
    throw DomainError("collision shift is undefined for equal velocities and frequencies");
  }

  ManakovShift shift;
  shift.chi1 = numerator / denominator1;
  shift.chi2 = numerator / denominator2;
  // Sign chosen to match direct simulation: the faster-approaching soliton
  // is pushed forward along its direction of travel.
  shift.tau1 = std::log(std::abs(shift.chi1)) / s1;
  shift.tau2 = -std::log(std::abs(shift.chi2)) / s2;
  shift.theta1 = shift.chi1 / std::abs(shift.chi1);
  shift.theta2 = shift.chi2 / std::abs(shift.chi2);
  return shift;
}

FieldPair predicted_outgoing(const ManakovShift& shift, const SolitonSpec& spec1,
                             const SolitonSpec& spec2, double t, const GridSpec& grid,
                             double mu) {
  FieldPair out = FieldPair::zeros(grid.size(), t);
  for (int j : {1, 2}) {
    SolitonSpec spec = j == 1 ? spec1 : spec2;
    spec.x0 += shift.tau(j);
    ComplexField field = soliton_field(spec, mu, t, grid);
    for (auto& z : field) z *= shift.theta(j);
    out.component(j) = std::move(field);
  }
  return out;
}

double fitted_translation(std::span<const double> f, std::span<const double> g,
                          const GridSpec& grid) {
  const std::size_t n = grid.size();
  if (f.size() != n || g.size() != n) {
    throw ContractViolation("fitted translation: array lengths differ from grid size");
  }
  ComplexField fs(f.begin(), f.end());
  ComplexField gs(g.begin(), g.end());
  grid.transform(fs, fs, Direction::forward);
  grid.transform(gs, gs, Direction::forward);
  for (std::size_t i = 0; i < n; ++i) fs[i] *= std::conj(gs[i]);
  grid.transform(fs, fs, Direction::inverse);

  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (fs[i].real() > fs[best].real()) best = i;
  }
  const double lo = fs[(best + n - 1) % n].real();
  const double hi = fs[(best + 1) % n].real();
  const double offset = parabolic_vertex(lo, fs[best].real(), hi);
  const auto signed_index = static_cast<double>(grid.mode(best));
  return (signed_index + offset) * grid.spacing();
}

ElasticComparison elastic_error(const FieldPair& numeric, const FieldPair& predicted,
                                const GridSpec& grid) {
  if (numeric.size() != grid.size() || predicted.size() != grid.size()) {
    throw ContractViolation("elastic error: fields do not match grid size");
  }
  ElasticComparison out;
  for (int j : {1, 2}) {
    const RealField a = density(numeric.component(j));
    const RealField b = density(predicted.component(j));
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    out.sup_density_error[j - 1] = worst;
    out.fitted_offset[j - 1] = fitted_translation(a, b, grid);
  }
  return out;
}

}  // namespace cnls
