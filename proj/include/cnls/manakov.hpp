#pragma once

#include <array>
#include <complex>

#include "cnls/field_pair.hpp"
#include "cnls/grid.hpp"
#include "cnls/profiles.hpp"

namespace cnls {

/// Asymptotic outcome of a two-soliton collision in the integrable case
/// mu1 = mu2 = beta: translation shifts tau_j and unit phase factors theta_j.
struct ManakovShift {
  Complex chi1;
  Complex chi2;
  double tau1 = 0.0;
  double tau2 = 0.0;
  Complex theta1{1.0, 0.0};
  Complex theta2{1.0, 0.0};

  double tau(int j) const { return j == 1 ? tau1 : tau2; }
  Complex theta(int j) const { return j == 1 ? theta1 : theta2; }
};

/// chi_1 = (dv + 2i(s1 + s2)) / (dv + 2i(s1 - s2)),
/// chi_2 = (dv + 2i(s1 + s2)) / (dv - 2i(s1 - s2)),  dv = v1 - v2, s_j = sqrt(omega_j);
/// tau_1 = ln|chi_1| / s1, tau_2 = -ln|chi_2| / s2, theta_j = chi_j / |chi_j|.
/// Throws DomainError for omega_j <= 0 or v1 = v2 with omega1 = omega2.
ManakovShift collision_shift(double omega1, double omega2, double v1, double v2);

/// Outgoing solitons at time t (valid once they have separated):
///   theta_j exp(i(v_j x/2 + (omega_j - v_j^2/4) t + gamma_j))
///     Q_{omega_j}(x - v_j t - x0_j - tau_j) / sqrt(mu)
FieldPair predicted_outgoing(const ManakovShift& shift, const SolitonSpec& spec1,
                             const SolitonSpec& spec2, double t, const GridSpec& grid,
                             double mu = 1.0);

struct ElasticComparison {
  /// max_k | |u_j|^2 - |u_hat_j|^2 | per component.
  std::array<double, 2> sup_density_error{};
  /// Translation s that maximizes the cross-correlation of |u_j|^2 with
  /// |u_hat_j|^2(x - s): positive when the numerical wave sits to the right.
  std::array<double, 2> fitted_offset{};
};

ElasticComparison elastic_error(const FieldPair& numeric, const FieldPair& predicted,
                                const GridSpec& grid);

/// Sub-grid translation s maximizing sum_k f(x_k) g(x_k - s) on a periodic
/// grid (FFT correlation, parabolic refinement of the discrete maximum).
double fitted_translation(std::span<const double> f, std::span<const double> g,
                          const GridSpec& grid);

}  // namespace cnls
