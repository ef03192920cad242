#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cnls/grid.hpp"
#include "cnls/profiles.hpp"

namespace cnls {

/// Finite-difference grid on [-a, a] with `intervals` cells. Unknowns live at
/// the interior nodes x_k = -a + k h, k = 1..intervals-1; both ends carry
/// homogeneous Dirichlet values.
struct FdGrid {
  double half_width = 16.0;
  std::size_t intervals = 512;

  double spacing() const { return 2.0 * half_width / static_cast<double>(intervals); }
  std::size_t interior_size() const { return intervals - 1; }
  double node(std::size_t interior_index) const {
    return -half_width + static_cast<double>(interior_index + 1) * spacing();
  }
  RealField interior_nodes() const;
  void validate() const;
};

/// Real profiles (phi1, phi2) on the interior of an FdGrid.
struct ProfilePair {
  RealField phi1;
  RealField phi2;

  RealField& component(int j) { return j == 1 ? phi1 : phi2; }
  const RealField& component(int j) const { return j == 1 ? phi1 : phi2; }
};

/// Target values of int phi_j^2 (the squared L2 norms a_j^2).
struct MassTargets {
  double a1_sq = 1.0;
  double a2_sq = 1.0;

  double operator[](int j) const { return j == 1 ? a1_sq : a2_sq; }
};

struct GroundStateOptions {
  FdGrid grid;
  double tau = 0.1;
  double tol = 1e-8;
  std::size_t max_iter = 100000;
};

struct GroundStateResult {
  FdGrid grid;
  RealField phi1;
  RealField phi2;
  double omega1 = 0.0;
  double omega2 = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
  std::vector<double> energy_trace;

  ProfilePair profiles() const { return {phi1, phi2}; }
};

/// Thomas algorithm for lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
/// lower[0] and upper[n-1] are ignored. Throws SingularSystemError on a zero
/// pivot.
RealField tridiagonal_solve(std::span<const double> lower, std::span<const double> diag,
                            std::span<const double> upper, std::span<const double> rhs);

/// One semi-implicit backward-Euler step of the normalized gradient flow,
/// followed by projection onto h * sum phi_j^2 = a_j^2.
/// Throws StepFailure if an implicit system is singular.
ProfilePair befd_step(const ProfilePair& phi, const CoupledParams& params,
                      const MassTargets& masses, double tau, double h);

/// Rayleigh-type quotient
///   (int -|phi_j'|^2 + mu_j phi_j^4 + beta phi_1^2 phi_2^2) / int phi_j^2,
/// with phi' the centred difference at cell midpoints (summation by parts
/// against the 3-point Laplacian). Throws DomainError if int phi_j^2 = 0.
double compute_omega(const ProfilePair& phi, const CoupledParams& params, double h,
                     int component);
std::pair<double, double> compute_omega(const ProfilePair& phi, const CoupledParams& params,
                                        double h);

/// Discrete energy of real profiles with Dirichlet ends:
///   sum_j [ (h/2) sum (D+ phi_j)^2 - (mu_j h/4) sum phi_j^4 ] - (beta h/2) sum phi1^2 phi2^2.
double discrete_energy(const ProfilePair& phi, const CoupledParams& params, double h);

/// max_k |(-Lap_h phi_j + omega_j phi_j - mu_j phi_j^3 - beta phi_{3-j}^2 phi_j)_k|.
double stationary_residual(const ProfilePair& phi, const CoupledParams& params, double h,
                           int component, double omega);

/// Default half width 16 max(1, 1/sqrt(min omega_hat)) with omega_hat_j =
/// (mu_j a_j^2 / 4)^2, the scalar mass-frequency relation.
double default_half_width(const MassTargets& masses, const CoupledParams& params);

/// Normalized gradient flow from a Gaussian initial guess until
/// max_k |phi^{n+1} - phi^n| / tau <= tol for both components.
/// Throws ConvergenceError after max_iter iterations.
GroundStateResult solve_ground_state(const CoupledParams& params, const MassTargets& masses,
                                     const GroundStateOptions& options);

/// Band-limited interpolant of a Dirichlet profile: the sine series of its
/// odd extension, evaluated anywhere; zero outside [-a, a].
class SineSeriesProfile {
 public:
  SineSeriesProfile(const FdGrid& grid, std::span<const double> interior_values);

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  /// Samples value(x_k - shift) at each of the given positions.
  RealField sample(std::span<const double> positions, double shift = 0.0) const;

 private:
  template <int Order>
  double evaluate(double x) const;

  FdGrid grid_;
  RealField coefficients_;
};

}  // namespace cnls
