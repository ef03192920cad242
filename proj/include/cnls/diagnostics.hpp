#pragma once

#include <span>

#include "cnls/field_pair.hpp"
#include "cnls/grid.hpp"
#include "cnls/profiles.hpp"

namespace cnls {

/// Conserved and localized quantities at one instant.
struct DiagnosticsRecord {
  double t = 0.0;
  double M1 = 0.0;
  double M2 = 0.0;
  double E = 0.0;
  double P = 0.0;
  double Ploc1 = 0.0;
  double Ploc2 = 0.0;
};

/// M(u) = (1/2) int |u|^2.
double mass(std::span<const Complex> u, const GridSpec& grid);

/// Total energy
///   E(u1, mu1) + E(u2, mu2) - (beta/2) int |u1|^2 |u2|^2,
///   E(u, mu) = (1/2) ||u_x||^2 - (mu/4) ||u||_4^4,
/// with u_x from the spectral derivative.
double energy(const FieldPair& pair, const CoupledParams& params, const GridSpec& grid);

/// Scalar energy E(u, mu) of a single component.
double component_energy(std::span<const Complex> u, double mu, const GridSpec& grid);

/// P = (1/2) Im int (u1 conj(u1_x) + u2 conj(u2_x)).
double momentum(const FieldPair& pair, const GridSpec& grid);

/// Momentum density weighted by chi(x/L) for j = 1 and 1 - chi(x/L) for j = 2.
double localized_momentum(const FieldPair& pair, const GridSpec& grid, double cutoff_length,
                          int component);

/// C^3 monotone ramp: 0 for x <= -1, 1 for x >= 1, and the septic smoothstep
/// 35s^4 - 84s^5 + 70s^6 - 20s^7 in s = (x+1)/2 in between.
double cutoff_chi(double x);

/// All fields of a DiagnosticsRecord; shares one derivative per component.
DiagnosticsRecord compute_diagnostics(const FieldPair& pair, const CoupledParams& params,
                                      const GridSpec& grid, double cutoff_length);

struct ErrorNorms {
  double sup = 0.0;
  double l2 = 0.0;
};

/// Sup and discrete L2 norms of f - g.
ErrorNorms error_norms(std::span<const Complex> f, std::span<const Complex> g,
                       const GridSpec& grid);

/// log2(coarse / fine) for errors at step sizes tau and tau/2.
double observed_order(double coarse_error, double fine_error);

}  // namespace cnls
