#include "cnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "cnls/error.hpp"

namespace cnls {

namespace {

// Im(u conj(u_x)) at every node.
RealField momentum_density(std::span<const Complex> u, std::span<const Complex> ux) {
  RealField out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = (u[k] * std::conj(ux[k])).imag();
  return out;
}

double weighted_sum(std::span<const double> density, std::span<const double> weight) {
  double s = 0.0;
  for (std::size_t k = 0; k < density.size(); ++k) s += density[k] * weight[k];
  return s;
}

RealField cutoff_weights(const GridSpec& grid, double cutoff_length, int component) {
  if (!(cutoff_length > 0.0)) throw DomainError("cutoff length L must be positive");
  if (component != 1 && component != 2) throw DomainError("component must be 1 or 2");
  RealField w(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double chi = cutoff_chi(grid.node(k) / cutoff_length);
    w[k] = component == 1 ? chi : 1.0 - chi;
  }
  return w;
}

}  // namespace

double mass(std::span<const Complex> u, const GridSpec& grid) {
  return 0.5 * quadrature(density(u), grid);
}

double component_energy(std::span<const Complex> u, double mu, const GridSpec& grid) {
  const ComplexField ux = spectral_derivative(u, grid);
  double kinetic = 0.0;
  double quartic = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    kinetic += std::norm(ux[k]);
    const double rho = std::norm(u[k]);
    quartic += rho * rho;
  }
  const double h = grid.spacing();
  return 0.5 * h * kinetic - 0.25 * mu * h * quartic;
}

double energy(const FieldPair& pair, const CoupledParams& params, const GridSpec& grid) {
  double coupling = 0.0;
  for (std::size_t k = 0; k < pair.size(); ++k) {
    coupling += std::norm(pair.u1[k]) * std::norm(pair.u2[k]);
  }
  return component_energy(pair.u1, params.mu1, grid) +
         component_energy(pair.u2, params.mu2, grid) -
         0.5 * params.beta * grid.spacing() * coupling;
}

double momentum(const FieldPair& pair, const GridSpec& grid) {
  const RealField p1 = momentum_density(pair.u1, spectral_derivative(pair.u1, grid));
  const RealField p2 = momentum_density(pair.u2, spectral_derivative(pair.u2, grid));
  return 0.5 * (quadrature(p1, grid) + quadrature(p2, grid));
}

double localized_momentum(const FieldPair& pair, const GridSpec& grid, double cutoff_length,
                          int component) {
  const RealField w = cutoff_weights(grid, cutoff_length, component);
  const RealField p1 = momentum_density(pair.u1, spectral_derivative(pair.u1, grid));
  const RealField p2 = momentum_density(pair.u2, spectral_derivative(pair.u2, grid));
  return 0.5 * grid.spacing() * (weighted_sum(p1, w) + weighted_sum(p2, w));
}

double cutoff_chi(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double s = 0.5 * (x + 1.0);
  const double s4 = s * s * s * s;
  return s4 * (35.0 + s * (-84.0 + s * (70.0 - 20.0 * s)));
}

DiagnosticsRecord compute_diagnostics(const FieldPair& pair, const CoupledParams& params,
                                      const GridSpec& grid, double cutoff_length) {
  const ComplexField ux1 = spectral_derivative(pair.u1, grid);
  const ComplexField ux2 = spectral_derivative(pair.u2, grid);
  const RealField w = cutoff_weights(grid, cutoff_length, 1);
  const double h = grid.spacing();

  double m1 = 0.0, m2 = 0.0, kin1 = 0.0, kin2 = 0.0, q1 = 0.0, q2 = 0.0, cross = 0.0;
  double p = 0.0, p_right = 0.0;
  for (std::size_t k = 0; k < pair.size(); ++k) {
    const double r1 = std::norm(pair.u1[k]);
    const double r2 = std::norm(pair.u2[k]);
    m1 += r1;
    m2 += r2;
    kin1 += std::norm(ux1[k]);
    kin2 += std::norm(ux2[k]);
    q1 += r1 * r1;
    q2 += r2 * r2;
    cross += r1 * r2;
    const double pk = (pair.u1[k] * std::conj(ux1[k])).imag() +
                      (pair.u2[k] * std::conj(ux2[k])).imag();
    p += pk;
    p_right += pk * w[k];
  }

  DiagnosticsRecord rec;
  rec.t = pair.t;
  rec.M1 = 0.5 * h * m1;
  rec.M2 = 0.5 * h * m2;
  rec.E = 0.5 * h * (kin1 + kin2) - 0.25 * h * (params.mu1 * q1 + params.mu2 * q2) -
          0.5 * params.beta * h * cross;
  rec.P = 0.5 * h * p;
  rec.Ploc1 = 0.5 * h * p_right;
  rec.Ploc2 = rec.P - rec.Ploc1;
  return rec;
}

ErrorNorms error_norms(std::span<const Complex> f, std::span<const Complex> g,
                       const GridSpec& grid) {
  if (f.size() != g.size() || f.size() != grid.size()) {
    throw ContractViolation("error norms: array lengths differ");
  }
  ErrorNorms out;
  double sq = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double d = std::abs(f[k] - g[k]);
    out.sup = std::max(out.sup, d);
    sq += d * d;
  }
  out.l2 = std::sqrt(grid.spacing() * sq);
  return out;
}

double observed_order(double coarse_error, double fine_error) {
  if (!(coarse_error > 0.0) || !(fine_error > 0.0)) {
    throw DomainError("observed order needs positive errors");
  }
  return std::log2(coarse_error / fine_error);
}

}  // namespace cnls
