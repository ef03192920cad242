#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cnls/error.hpp"
#include "cnls/gradientflow.hpp"

using namespace cnls;

namespace {

double weighted_l2(const RealField& f, double h) {
  double s = 0.0;
  for (double v : f) s += v * v;
  return h * s;
}

// 3x3 solve by Cramer's rule.
std::array<double, 3> cramer(const double m[3][3], const double b[3]) {
  auto det = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det(m);
  std::array<double, 3> x{};
  for (int c = 0; c < 3; ++c) {
    double mc[3][3];
    for (int r = 0; r < 3; ++r) {
      for (int k = 0; k < 3; ++k) mc[r][k] = k == c ? b[r] : m[r][k];
    }
    x[c] = det(mc) / d;
  }
  return x;
}

ProfilePair sampled_q(const FdGrid& grid, double omega1, double omega2) {
  ProfilePair p;
  for (std::size_t i = 0; i < grid.interior_size(); ++i) {
    const double x = grid.node(i);
    p.phi1.push_back(std::sqrt(2.0 * omega1) / std::cosh(std::sqrt(omega1) * x));
    p.phi2.push_back(omega2 > 0.0 ? std::sqrt(2.0 * omega2) / std::cosh(std::sqrt(omega2) * x)
                                  : 0.0);
  }
  return p;
}

GroundStateResult scalar_ground_state() {
  GroundStateOptions opt;
  opt.grid = FdGrid{16.0, 512};
  return solve_ground_state(CoupledParams{1.0, 1.0, 0.0}, MassTargets{4.0, 4.0}, opt);
}

}  // namespace

TEST(Tridiagonal, IdentityReturnsRhs) {
  const RealField zero(5, 0.0), one(5, 1.0), rhs{1.0, -2.0, 3.5, 0.0, 7.0};
  EXPECT_EQ(tridiagonal_solve(zero, one, zero, rhs), rhs);
}

TEST(Tridiagonal, MatchesDenseThreeByThree) {
  const RealField lower{0.0, 1.0, 1.0}, diag{2.0, 2.0, 2.0}, upper{1.0, 1.0, 0.0};
  const RealField rhs{1.0, 0.0, 1.0};
  const double m[3][3] = {{2, 1, 0}, {1, 2, 1}, {0, 1, 2}};
  const double b[3] = {1, 0, 1};
  const auto expected = cramer(m, b);
  const RealField x = tridiagonal_solve(lower, diag, upper, rhs);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(x[i], expected[i], 1e-14);
}

TEST(Tridiagonal, DirichletLaplacianMultiplyBack) {
  const std::size_t n = 200;
  RealField lower(n, -1.0), diag(n, 2.0), upper(n, -1.0), known(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) known[i] = std::sin(0.1 * i) + 0.01 * i;
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = 2.0 * known[i] - (i > 0 ? known[i - 1] : 0.0) - (i + 1 < n ? known[i + 1] : 0.0);
  }
  const RealField x = tridiagonal_solve(lower, diag, upper, rhs);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], known[i], 1e-10);
}

TEST(Tridiagonal, ZeroPivotReportsRow) {
  const RealField lower{0.0, 1.0, 1.0}, diag{1.0, 1.0, 2.0}, upper{1.0, 1.0, 0.0};
  try {
    tridiagonal_solve(lower, diag, upper, RealField{1.0, 1.0, 1.0});
    FAIL() << "expected singular system";
  } catch (const SingularSystemError& e) {
    EXPECT_EQ(e.row(), 1u);
  }
  EXPECT_THROW(tridiagonal_solve(RealField{0.0}, RealField{0.0}, RealField{0.0}, RealField{1.0}),
               SingularSystemError);
}

TEST(Tridiagonal, SizeMismatch) {
  EXPECT_THROW(tridiagonal_solve(RealField(2), RealField(3, 1.0), RealField(3), RealField(3)),
               ContractViolation);
}

TEST(FdGrid, Geometry) {
  const FdGrid g{16.0, 512};
  EXPECT_DOUBLE_EQ(g.spacing(), 1.0 / 16.0);
  EXPECT_EQ(g.interior_size(), 511u);
  EXPECT_DOUBLE_EQ(g.node(0), -16.0 + 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(g.node(255), 0.0);
  EXPECT_THROW((FdGrid{0.0, 10}.validate()), ConfigError);
  EXPECT_THROW((FdGrid{1.0, 2}.validate()), ConfigError);
}

// The 3-point gradient sum underestimates int Q'^2 by (h^2/12) int Q''^2,
// and int Q''^2 = 28/15 for omega = 1, so omega_h = 1 + 28 h^2 / 720 + O(h^4).
TEST(Omega, SampledSechMatchesTruncationPrediction) {
  for (std::size_t intervals : {256u, 512u, 1024u}) {
    const FdGrid g{16.0, intervals};
    const double h = g.spacing();
    const ProfilePair phi = sampled_q(g, 1.0, 1.0);
    const auto [w1, w2] = compute_omega(phi, CoupledParams{1.0, 1.0, 0.0}, h);
    EXPECT_NEAR(w1, 1.0 + 28.0 * h * h / 720.0, 1e-6) << intervals;
    EXPECT_DOUBLE_EQ(w1, w2);
    EXPECT_NEAR(w1, 1.0, 1e-3);
  }
}

TEST(Omega, MassFrequencyScaling) {
  const FdGrid g{16.0, 1024};
  const ProfilePair phi = sampled_q(g, 4.0, 1.0);
  EXPECT_NEAR(weighted_l2(phi.phi1, g.spacing()), 8.0, 1e-6);
  EXPECT_NEAR(compute_omega(phi, CoupledParams{1.0, 1.0, 0.0}, g.spacing(), 1), 4.0, 1e-3);
}

TEST(Omega, ZeroComponentIsDomainError) {
  const FdGrid g{16.0, 256};
  const ProfilePair phi = sampled_q(g, 1.0, 0.0);
  const CoupledParams p{1.0, 1.0, 0.5};
  EXPECT_TRUE(std::isfinite(compute_omega(phi, p, g.spacing(), 1)));
  EXPECT_THROW(compute_omega(phi, p, g.spacing(), 2), DomainError);
  EXPECT_THROW(compute_omega(phi, p, g.spacing()), DomainError);
}

TEST(Befd, ProjectsOntoMasses) {
  const FdGrid g{10.0, 200};
  const ProfilePair phi = sampled_q(g, 1.0, 2.0);
  const MassTargets m{1.7, 0.3};
  const ProfilePair out = befd_step(phi, CoupledParams{1.0, 2.0, 0.5}, m, 0.1, g.spacing());
  EXPECT_NEAR(weighted_l2(out.phi1, g.spacing()), 1.7, 1.7e-12);
  EXPECT_NEAR(weighted_l2(out.phi2, g.spacing()), 0.3, 0.3e-12);
}

TEST(Befd, SingularSystemBecomesStepFailure) {
  // diag = 1/tau + 2/h^2 - mu phi^2 vanishes for phi^2 = 3 at tau = h = 1.
  const ProfilePair phi{RealField{std::sqrt(3.0)}, RealField{1.0}};
  EXPECT_THROW(befd_step(phi, CoupledParams{1.0, 1.0, 0.0}, MassTargets{1.0, 1.0}, 1.0, 1.0),
               StepFailure);
}

TEST(Befd, RejectsNonPositiveStep) {
  const ProfilePair phi{RealField{1.0}, RealField{1.0}};
  EXPECT_THROW(befd_step(phi, CoupledParams{}, MassTargets{}, 0.0, 1.0), DomainError);
}

TEST(GroundState, ScalarOracle) {
  const GroundStateResult gs = scalar_ground_state();
  EXPECT_NEAR(gs.omega1, 1.0, 1e-3);
  double worst = 0.0;
  for (std::size_t i = 0; i < gs.phi1.size(); ++i) {
    const double x = gs.grid.node(i);
    worst = std::max(worst, std::abs(gs.phi1[i] - std::sqrt(2.0) / std::cosh(x)));
  }
  EXPECT_LE(worst, 1e-3);
  EXPECT_LE(gs.residual, 1e-8);
}

TEST(GroundState, EnergyNonIncreasingAndStationary) {
  const GroundStateResult gs = scalar_ground_state();
  ASSERT_GT(gs.energy_trace.size(), 12u);
  for (std::size_t n = 11; n < gs.energy_trace.size(); ++n) {
    EXPECT_LE(gs.energy_trace[n], gs.energy_trace[n - 1] + 1e-12) << n;
  }
  const ProfilePair phi = gs.profiles();
  const CoupledParams p{1.0, 1.0, 0.0};
  const double h = gs.grid.spacing();
  EXPECT_LE(stationary_residual(phi, p, h, 1, gs.omega1), 10 * 1e-8);
  EXPECT_NEAR(discrete_energy(phi, p, h), gs.energy_trace.back(), 1e-12);
}

TEST(GroundState, FixedPointOfBefd) {
  GroundStateOptions opt;
  opt.grid = FdGrid{16.0, 512};
  opt.tol = 1e-10;
  const CoupledParams p{1.0, 1.0, 0.0};
  const GroundStateResult gs = solve_ground_state(p, MassTargets{4.0, 4.0}, opt);
  const ProfilePair phi = gs.profiles();
  const ProfilePair next = befd_step(phi, p, MassTargets{4.0, 4.0}, opt.tau, gs.grid.spacing());
  double worst = 0.0;
  for (std::size_t i = 0; i < phi.phi1.size(); ++i) {
    worst = std::max(worst, std::abs(next.phi1[i] - phi.phi1[i]));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(GroundState, FreeFlowGivesLowestSineMode) {
  GroundStateOptions opt;
  opt.grid = FdGrid{2.0, 40};
  opt.tau = 0.5;
  opt.tol = 1e-10;
  const CoupledParams free{1e-12, 1e-12, 0.0};
  const GroundStateResult gs = solve_ground_state(free, MassTargets{1.0, 2.0}, opt);
  const double h = opt.grid.spacing();
  RealField mode;
  for (std::size_t i = 0; i < opt.grid.interior_size(); ++i) {
    mode.push_back(std::sin(std::numbers::pi * (opt.grid.node(i) + 2.0) / 4.0));
  }
  const double scale = std::sqrt(1.0 / weighted_l2(mode, h));
  for (std::size_t i = 0; i < mode.size(); ++i) EXPECT_NEAR(gs.phi1[i], scale * mode[i], 1e-6);
  // Lowest eigenvalue of the discrete Dirichlet Laplacian.
  const double lambda = 4.0 / (h * h) * std::pow(std::sin(std::numbers::pi * h / 8.0), 2);
  EXPECT_NEAR(gs.omega1, -lambda, 1e-6);
}

TEST(GroundState, SymmetricProblemGivesEqualProfiles) {
  GroundStateOptions opt;
  opt.grid = FdGrid{16.0, 256};
  const GroundStateResult gs =
      solve_ground_state(CoupledParams{1.0, 1.0, 0.6}, MassTargets{2.0, 2.0}, opt);
  for (std::size_t i = 0; i < gs.phi1.size(); ++i) EXPECT_NEAR(gs.phi1[i], gs.phi2[i], 1e-8);
}

TEST(GroundState, NonConvergenceCarriesResidual) {
  GroundStateOptions opt;
  opt.grid = FdGrid{16.0, 256};
  opt.max_iter = 3;
  try {
    solve_ground_state(CoupledParams{1.0, 1.0, 0.0}, MassTargets{4.0, 4.0}, opt);
    FAIL() << "expected non-convergence";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.residual(), 1e-8);
    EXPECT_EQ(e.iterations(), 3u);
  }
}

TEST(GroundState, RejectsBadTargets) {
  GroundStateOptions opt;
  EXPECT_ANY_THROW(solve_ground_state(CoupledParams{}, MassTargets{0.0, 1.0}, opt));
  opt.tol = 0.0;
  EXPECT_ANY_THROW(solve_ground_state(CoupledParams{}, MassTargets{1.0, 1.0}, opt));
}

TEST(DefaultHalfWidth, GrowsForSmallMasses) {
  const CoupledParams p{1.0, 1.0, 3.0};
  EXPECT_DOUBLE_EQ(default_half_width(MassTargets{4.0, 4.0}, p), 16.0);
  // a^2 = 0.069 -> omega_hat = (0.069/4)^2, 1/sqrt = 4/0.069.
  EXPECT_NEAR(default_half_width(MassTargets{3.893, 0.069}, p), 16.0 * 4.0 / 0.069, 1e-9);
}

TEST(SineSeries, InterpolatesNodesAndSmoothProfile) {
  const FdGrid g{16.0, 512};
  RealField values;
  for (std::size_t i = 0; i < g.interior_size(); ++i) {
    values.push_back(std::sqrt(2.0) / std::cosh(g.node(i)));
  }
  const SineSeriesProfile s(g, values);
  for (std::size_t i = 0; i < values.size(); i += 37) EXPECT_NEAR(s.value(g.node(i)), values[i], 1e-12);
  for (double x : {-3.3, -0.01, 0.7, 2.05}) {
    EXPECT_NEAR(s.value(x), std::sqrt(2.0) / std::cosh(x), 1e-8);
    EXPECT_NEAR(s.derivative(x), -std::sqrt(2.0) * std::tanh(x) / std::cosh(x), 1e-7);
  }
  EXPECT_NEAR(s.derivative(0.0), 0.0, 1e-10);
  EXPECT_LT(s.second_derivative(0.0), 0.0);
  EXPECT_EQ(s.value(16.5), 0.0);
  EXPECT_EQ(s.value(-20.0), 0.0);
  const RealField shifted = s.sample(std::vector<double>{1.5}, 1.5);
  EXPECT_NEAR(shifted[0], std::sqrt(2.0), 1e-8);
}
