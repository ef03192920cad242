#pragma once

#include "cnls/field_pair.hpp"
#include "cnls/grid.hpp"

namespace cnls {

/// Self-interaction strengths mu1, mu2 > 0 and cross coupling beta.
/// beta = 0 is accepted for decoupled runs.
struct CoupledParams {
  double mu1 = 1.0;
  double mu2 = 1.0;
  double beta = 0.0;

  double mu(int component) const { return component == 1 ? mu1 : mu2; }
  /// Throws ConfigError on mu_j <= 0 or non-finite values.
  void validate() const;
  bool integrable() const { return mu1 == mu2 && mu1 == beta; }
};

/// Parameters of one travelling soliton carried by a single component.
struct SolitonSpec {
  double omega = 1.0;
  double v = 0.0;
  double x0 = 0.0;
  double gamma = 0.0;
  int component = 1;

  void validate() const;
};

/// Ground state Q_omega(x) = sqrt(2 omega) sech(sqrt(omega) x) of
/// -Q'' + omega Q - Q^3 = 0. Throws DomainError for omega <= 0.
double ground_profile(double omega, double x);

/// Travelling wave
///   exp(i(omega t - v^2 t/4 + v x/2 + gamma)) Q_omega(x - v t - x0) / sqrt(mu)
/// sampled at the grid nodes.
ComplexField soliton_field(const SolitonSpec& spec, double mu, double t,
                           const GridSpec& grid);

/// Two-soliton initial data at time t0: spec1 on u1, spec2 on u2. Each
/// component is the travelling wave above with its own mu_j.
/// Throws ConfigError if the component indices are not (1, 2).
FieldPair initial_data(const SolitonSpec& spec1, const SolitonSpec& spec2,
                       const CoupledParams& params, double t0, const GridSpec& grid);

}  // namespace cnls
