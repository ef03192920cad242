#include "cnls/gradientflow.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>

#include "cnls/error.hpp"
#include "fft_lock.hpp"

namespace cnls {

namespace {

double sum_squares(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

// Sum over all cells of (phi_{k+1} - phi_k)^2, with zero Dirichlet ends.
double gradient_sum(std::span<const double> phi) {
  double s = 0.0;
  double left = 0.0;
  for (double value : phi) {
    s += (value - left) * (value - left);
    left = value;
  }
  return s + left * left;
}

void check_pair(const ProfilePair& phi) {
  if (phi.phi1.size() != phi.phi2.size() || phi.phi1.empty()) {
    throw ContractViolation("profile components must be non-empty and of equal length");
  }
}

}  // namespace

RealField FdGrid::interior_nodes() const {
  RealField x(interior_size());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = node(k);
  return x;
}

void FdGrid::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ConfigError("finite-difference half width must be positive");
  }
  if (intervals < 4) throw ConfigError("finite-difference grid needs at least 4 intervals");
}

RealField tridiagonal_solve(std::span<const double> lower, std::span<const double> diag,
                            std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n) {
    throw ContractViolation("tridiagonal solve: band and rhs lengths differ");
  }
  if (n == 0) return {};

  RealField c(n);
  RealField x(n);
  double pivot = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) pivot = diag[i] - lower[i] * c[i - 1];
    const double scale = std::abs(diag[i]) + std::abs(lower[i]) + std::abs(upper[i]);
    if (pivot == 0.0 || std::abs(pivot) <= 1e-14 * scale || !std::isfinite(pivot)) {
      throw SingularSystemError("tridiagonal system is singular at row " + std::to_string(i),
                                i);
    }
    c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
    x[i] = (rhs[i] - (i > 0 ? lower[i] * x[i - 1] : 0.0)) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

ProfilePair befd_step(const ProfilePair& phi, const CoupledParams& params,
                      const MassTargets& masses, double tau, double h) {
  check_pair(phi);
  if (!(tau > 0.0) || !(h > 0.0)) throw DomainError("gradient flow needs tau > 0 and h > 0");

  const std::size_t n = phi.phi1.size();
  const double inv_tau = 1.0 / tau;
  const double inv_h2 = 1.0 / (h * h);
  const RealField off(n, -inv_h2);
  RealField diag(n);
  RealField rhs(n);
  ProfilePair next;

  for (int j : {1, 2}) {
    const RealField& self = phi.component(j);
    const RealField& other = phi.component(3 - j);
    const double mu = params.mu(j);
    for (std::size_t k = 0; k < n; ++k) {
      diag[k] = inv_tau + 2.0 * inv_h2 - mu * self[k] * self[k] -
                params.beta * other[k] * other[k];
      rhs[k] = self[k] * inv_tau;
    }
    RealField star;
    try {
      star = tridiagonal_solve(off, diag, off, rhs);
    } catch (const SingularSystemError& e) {
      std::ostringstream msg;
      msg << "gradient-flow step failed for component " << j << " (" << e.what()
          << "); reduce the flow step tau = " << tau;
      throw StepFailure(msg.str());
    }
    const double norm_sq = h * sum_squares(star);
    if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) {
      throw StepFailure("gradient-flow step produced a zero or non-finite profile for component " +
                        std::to_string(j));
    }
    const double scale = std::sqrt(masses[j] / norm_sq);
    for (double& v : star) v *= scale;
    next.component(j) = std::move(star);
  }
  return next;
}

double compute_omega(const ProfilePair& phi, const CoupledParams& params, double h,
                     int component) {
  check_pair(phi);
  const RealField& self = phi.component(component);
  const double norm_sq = h * sum_squares(self);
  if (!(norm_sq > 0.0)) {
    throw DomainError("omega undefined for component " + std::to_string(component) +
                      ": zero mass");
  }
  double quartic = 0.0;
  double cross = 0.0;
  for (std::size_t k = 0; k < self.size(); ++k) {
    const double s2 = self[k] * self[k];
    quartic += s2 * s2;
    cross += phi.phi1[k] * phi.phi1[k] * phi.phi2[k] * phi.phi2[k];
  }
  const double numerator = -gradient_sum(self) / h + h * params.mu(component) * quartic +
                           h * params.beta * cross;
  return numerator / norm_sq;
}

std::pair<double, double> compute_omega(const ProfilePair& phi, const CoupledParams& params,
                                        double h) {
  return {compute_omega(phi, params, h, 1), compute_omega(phi, params, h, 2)};
}

double discrete_energy(const ProfilePair& phi, const CoupledParams& params, double h) {
  check_pair(phi);
  double e = 0.0;
  for (int j : {1, 2}) {
    const RealField& p = phi.component(j);
    double quartic = 0.0;
    for (double v : p) quartic += v * v * v * v;
    e += 0.5 * gradient_sum(p) / h - 0.25 * params.mu(j) * h * quartic;
  }
  double cross = 0.0;
  for (std::size_t k = 0; k < phi.phi1.size(); ++k) {
    cross += phi.phi1[k] * phi.phi1[k] * phi.phi2[k] * phi.phi2[k];
  }
  return e - 0.5 * params.beta * h * cross;
}

double stationary_residual(const ProfilePair& phi, const CoupledParams& params, double h,
                           int component, double omega) {
  check_pair(phi);
  const RealField& self = phi.component(component);
  const RealField& other = phi.component(3 - component);
  const double mu = params.mu(component);
  const std::size_t n = self.size();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double left = k > 0 ? self[k - 1] : 0.0;
    const double right = k + 1 < n ? self[k + 1] : 0.0;
    const double laplacian = (left - 2.0 * self[k] + right) / (h * h);
    const double r = -laplacian + omega * self[k] - mu * self[k] * self[k] * self[k] -
                     params.beta * other[k] * other[k] * self[k];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double default_half_width(const MassTargets& masses, const CoupledParams& params) {
  double min_omega = std::numeric_limits<double>::infinity();
  for (int j : {1, 2}) {
    const double w = params.mu(j) * masses[j] / 4.0;
    min_omega = std::min(min_omega, w * w);
  }
  if (!(min_omega > 0.0)) throw DomainError("mass targets must be positive");
  return 16.0 * std::max(1.0, 1.0 / std::sqrt(min_omega));
}

GroundStateResult solve_ground_state(const CoupledParams& params, const MassTargets& masses,
                                     const GroundStateOptions& options) {
  params.validate();
  options.grid.validate();
  if (!(masses.a1_sq > 0.0) || !(masses.a2_sq > 0.0)) {
    throw DomainError("ground state mass targets must be positive");
  }
  if (!(options.tau > 0.0) || !(options.tol > 0.0)) {
    throw ConfigError("gradient flow needs tau > 0 and tol > 0");
  }

  const double h = options.grid.spacing();
  const RealField x = options.grid.interior_nodes();
  ProfilePair phi;
  for (int j : {1, 2}) {
    RealField guess(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) guess[k] = std::exp(-0.5 * x[k] * x[k]);
    const double scale = std::sqrt(masses[j] / (h * sum_squares(guess)));
    for (double& v : guess) v *= scale;
    phi.component(j) = std::move(guess);
  }

  GroundStateResult result;
  result.grid = options.grid;
  result.energy_trace.push_back(discrete_energy(phi, params, h));

  double residual = std::numeric_limits<double>::infinity();
  std::size_t iter = 0;
  while (iter < options.max_iter) {
    ProfilePair next = befd_step(phi, params, masses, options.tau, h);
    ++iter;
    residual = 0.0;
    for (int j : {1, 2}) {
      const RealField& a = next.component(j);
      const RealField& b = phi.component(j);
      for (std::size_t k = 0; k < a.size(); ++k) {
        residual = std::max(residual, std::abs(a[k] - b[k]) / options.tau);
      }
    }
    phi = std::move(next);
    result.energy_trace.push_back(discrete_energy(phi, params, h));
    if (residual <= options.tol) break;
  }
  if (residual > options.tol) {
    std::ostringstream msg;
    msg << "normalized gradient flow did not converge in " << iter
        << " iterations (residual " << residual << ", tol " << options.tol << ")";
    throw ConvergenceError(msg.str(), residual, iter);
  }
  for (int j : {1, 2}) {
    const RealField& p = phi.component(j);
    if (std::any_of(p.begin(), p.end(), [](double v) { return v < 0.0; })) {
      throw StepFailure("ground state lost positivity in component " + std::to_string(j));
    }
  }

  std::tie(result.omega1, result.omega2) = compute_omega(phi, params, h);
  result.phi1 = std::move(phi.phi1);
  result.phi2 = std::move(phi.phi2);
  result.iterations = iter;
  result.residual = residual;
  return result;
}

SineSeriesProfile::SineSeriesProfile(const FdGrid& grid, std::span<const double> interior_values)
    : grid_(grid), coefficients_(interior_values.size()) {
  const std::size_t n = interior_values.size();
  if (n != grid.interior_size()) {
    throw ContractViolation("profile length does not match the finite-difference grid");
  }
  RealField in(interior_values.begin(), interior_values.end());
  {
    // DST-I: Y_m = 2 sum_k X_k sin(pi (k+1)(m+1) / M), inverse scale 1/(2M).
    std::lock_guard lock(detail::planner_mutex());
    fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(n), in.data(), coefficients_.data(),
                                      FFTW_RODFT00, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / static_cast<double>(grid.intervals);
  for (double& b : coefficients_) b *= scale;
}

template <int Order>
double SineSeriesProfile::evaluate(double x) const {
  const double a = grid_.half_width;
  if (x <= -a || x >= a) return 0.0;
  const double k = std::numbers::pi / (2.0 * a);
  const double theta = k * (x + a);
  // z^m = exp(i m theta) by repeated multiplication, renormalized each step.
  const Complex step = std::polar(1.0, theta);
  Complex z = step;
  double acc = 0.0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const double m = static_cast<double>(i + 1);
    if constexpr (Order == 0) acc += coefficients_[i] * z.imag();
    if constexpr (Order == 1) acc += coefficients_[i] * m * k * z.real();
    if constexpr (Order == 2) acc -= coefficients_[i] * m * m * k * k * z.imag();
    z *= step;
    if ((i & 63) == 63) z = std::polar(1.0, m * theta + theta);
  }
  return acc;
}

double SineSeriesProfile::value(double x) const { return evaluate<0>(x); }
double SineSeriesProfile::derivative(double x) const { return evaluate<1>(x); }
double SineSeriesProfile::second_derivative(double x) const { return evaluate<2>(x); }

RealField SineSeriesProfile::sample(std::span<const double> positions, double shift) const {
  RealField out(positions.size());
  for (std::size_t k = 0; k < positions.size(); ++k) out[k] = value(positions[k] - shift);
  return out;
}

}  // namespace cnls
