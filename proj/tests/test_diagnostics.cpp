#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cnls/diagnostics.hpp"
#include "cnls/splitstep.hpp"

using namespace cnls;

namespace {

const CoupledParams kElastic{1.0, 1.0, 1.0};
const SolitonSpec kFast{.omega = 5.0, .v = 1.0, .component = 1};
const SolitonSpec kSlow{.omega = 1.0, .v = -1.0, .component = 2};

// Closed forms for R = Q_omega e^{i v x / 2} / sqrt(mu):
//   int Q^2 = 4 sqrt(w), int Q'^2 = (4/3) w^{3/2}, int Q^4 = (16/3) w^{3/2}.
double soliton_energy(double omega, double v, double mu) {
  const double s = std::sqrt(omega);
  return (0.5 * v * v * s - 2.0 / 3.0 * omega * s) / mu;
}

double soliton_momentum(double omega, double v, double mu) {
  return -v * std::sqrt(omega) / mu;
}

FieldPair elastic_start(const GridSpec& g) {
  return initial_data(kFast, kSlow, kElastic, -10.0, g);
}

}  // namespace

TEST(Mass, ZeroAndSoliton) {
  const GridSpec g(20.0, 1024);
  EXPECT_EQ(mass(ComplexField(1024), g), 0.0);
  for (double mu : {1.0, 2.0}) {
    const ComplexField r = soliton_field(SolitonSpec{.omega = 5.0, .v = 1.0}, mu, 0.0, g);
    EXPECT_NEAR(mass(r, g), 2.0 * std::sqrt(5.0) / mu, 1e-10);
  }
}

TEST(Energy, ZeroFields) {
  const GridSpec g(20.0, 128);
  EXPECT_EQ(energy(FieldPair::zeros(128), kElastic, g), 0.0);
  EXPECT_EQ(momentum(FieldPair::zeros(128), g), 0.0);
}

TEST(Energy, SeparatedSolitonsDecouple) {
  // Wide domain so the periodic images of the tails are negligible.
  const GridSpec g(40.0, 2048);
  const FieldPair u = elastic_start(g);
  const double e1 = component_energy(u.u1, 1.0, g);
  const double e2 = component_energy(u.u2, 1.0, g);
  EXPECT_NEAR(e1, soliton_energy(5.0, 1.0, 1.0), 1e-9);
  EXPECT_NEAR(e2, soliton_energy(1.0, -1.0, 1.0), 1e-9);
  EXPECT_NEAR(energy(u, kElastic, g), e1 + e2, 1e-10);
}

TEST(Energy, CrossTermSign) {
  const GridSpec g(20.0, 512);
  const FieldPair u = initial_data(SolitonSpec{.component = 1}, SolitonSpec{.component = 2},
                                   CoupledParams{}, 0.0, g);
  const double base = energy(u, CoupledParams{1.0, 1.0, 0.0}, g);
  // int Q_1^4 = 16/3, so the beta term is -(beta/2)(16/3).
  EXPECT_NEAR(energy(u, CoupledParams{1.0, 1.0, 2.0}, g) - base, -16.0 / 3.0, 1e-9);
}

TEST(Momentum, RealFieldIsZero) {
  const GridSpec g(20.0, 512);
  const FieldPair u = initial_data(SolitonSpec{.component = 1}, SolitonSpec{.component = 2},
                                   CoupledParams{}, 0.0, g);
  EXPECT_NEAR(momentum(u, g), 0.0, 1e-14);
}

TEST(Momentum, SolitonPhaseGradient) {
  const GridSpec g(40.0, 2048);
  const FieldPair u = elastic_start(g);
  EXPECT_NEAR(momentum(u, g), soliton_momentum(5.0, 1.0, 1.0) + soliton_momentum(1.0, -1.0, 1.0),
              1e-10);
  const FieldPair scaled = initial_data(SolitonSpec{.omega = 2.0, .v = 0.6, .component = 1},
                                        SolitonSpec{.omega = 1.0, .v = 0.0, .component = 2},
                                        CoupledParams{3.0, 1.0, 0.0}, 0.0, g);
  EXPECT_NEAR(momentum(scaled, g), soliton_momentum(2.0, 0.6, 3.0), 1e-10);
}

TEST(Momentum, LocalizedPartsSumToTotal) {
  const GridSpec g(20.0, 512);
  std::mt19937 rng(5);
  std::normal_distribution<double> dist;
  FieldPair u = FieldPair::zeros(512);
  for (std::size_t k = 0; k < 512; ++k) {
    const double env = std::exp(-0.02 * g.node(k) * g.node(k));
    u.u1[k] = env * Complex(dist(rng), dist(rng));
    u.u2[k] = env * Complex(dist(rng), dist(rng));
  }
  const double p = momentum(u, g);
  for (double L : {0.5, 2.0, 4.0, 8.0}) {
    const double sum = localized_momentum(u, g, L, 1) + localized_momentum(u, g, L, 2);
    EXPECT_NEAR(sum, p, 1e-10 * std::max(1.0, std::abs(p)));
  }
}

TEST(Momentum, LocalizedSeparatesSolitons) {
  const GridSpec g(40.0, 2048);
  const FieldPair u = elastic_start(g);
  // u1 sits at x = -10 on the chi = 0 side, u2 at +10. The slower-decaying
  // tail of u2 reaches into the ramp at the e^{-2 * 6} level.
  EXPECT_NEAR(localized_momentum(u, g, 4.0, 1), soliton_momentum(1.0, -1.0, 1.0), 1e-6);
  EXPECT_NEAR(localized_momentum(u, g, 4.0, 2), soliton_momentum(5.0, 1.0, 1.0), 1e-6);
  EXPECT_NEAR(localized_momentum(u, g, 1.0, 1), soliton_momentum(1.0, -1.0, 1.0), 1e-6);
}

TEST(Cutoff, EndpointsAndMidpoint) {
  EXPECT_EQ(cutoff_chi(-1.0), 0.0);
  EXPECT_EQ(cutoff_chi(-5.0), 0.0);
  EXPECT_DOUBLE_EQ(cutoff_chi(1.0), 1.0);
  EXPECT_EQ(cutoff_chi(3.0), 1.0);
  EXPECT_NEAR(cutoff_chi(0.0), 0.5, 1e-15);
  for (double x : {0.1, 0.45, 0.9}) EXPECT_NEAR(cutoff_chi(x) + cutoff_chi(-x), 1.0, 1e-14);
}

TEST(Cutoff, MonotoneAndBounded) {
  double prev = cutoff_chi(-1.0);
  for (int i = 1; i <= 10000; ++i) {
    const double x = -1.0 + 2.0 * i / 10000.0;
    const double c = cutoff_chi(x);
    EXPECT_GE(c, prev);
    EXPECT_LE(c, 1.0);
    prev = c;
  }
}

TEST(Cutoff, ThirdDerivativeContinuousAtEnds) {
  // One-sided third differences shrink with the step on both sides of +-1.
  auto third = [](double x, double d) {
    return (cutoff_chi(x + 3 * d) - 3 * cutoff_chi(x + 2 * d) + 3 * cutoff_chi(x + d) -
            cutoff_chi(x)) /
           (d * d * d);
  };
  for (double d : {1e-2, 5e-3}) {
    EXPECT_NEAR(third(-1.0, d), third(-1.0 - 3 * d, d), 200.0 * d);
    EXPECT_NEAR(third(1.0 - 3 * d, d), third(1.0, d), 200.0 * d);
  }
  EXPECT_LT(std::abs(third(-1.0, 1e-3)), std::abs(third(-1.0, 1e-2)));
}

TEST(Diagnostics, RecordMatchesIndividualFunctions) {
  const GridSpec g(20.0, 1024);
  const FieldPair u = elastic_start(g);
  const DiagnosticsRecord r = compute_diagnostics(u, kElastic, g, 4.0);
  EXPECT_EQ(r.t, -10.0);
  EXPECT_NEAR(r.M1, mass(u.u1, g), 1e-14);
  EXPECT_NEAR(r.M2, mass(u.u2, g), 1e-14);
  EXPECT_NEAR(r.E, energy(u, kElastic, g), 1e-12);
  EXPECT_NEAR(r.P, momentum(u, g), 1e-12);
  EXPECT_NEAR(r.Ploc1, localized_momentum(u, g, 4.0, 1), 1e-12);
  EXPECT_NEAR(r.Ploc1 + r.Ploc2, r.P, 1e-12);
}

TEST(Diagnostics, ConservedOverElasticRun) {
  const GridSpec g(20.0, 1024);
  const FieldPair u = elastic_start(g);
  const DiagnosticsRecord a = compute_diagnostics(u, kElastic, g, 4.0);
  const FieldPair end = evolve(u, kElastic, g, {.tau = 1e-3, .t_final = 10.0});
  const DiagnosticsRecord b = compute_diagnostics(end, kElastic, g, 4.0);
  EXPECT_NEAR(b.M1 / a.M1, 1.0, 1e-11);
  EXPECT_NEAR(b.M2 / a.M2, 1.0, 1e-11);
  EXPECT_NEAR(b.E / a.E, 1.0, 1e-8);
  EXPECT_NEAR(b.P, a.P, 1e-8 * std::abs(a.P));
}

TEST(ErrorNorms, IdenticalAndKnown) {
  const GridSpec g(1.0, 8);
  const ComplexField f(8, Complex(1.0, 2.0));
  const ErrorNorms zero = error_norms(f, f, g);
  EXPECT_EQ(zero.sup, 0.0);
  EXPECT_EQ(zero.l2, 0.0);
  ComplexField h = f;
  h[2] += Complex(0.0, 3.0);
  const ErrorNorms e = error_norms(h, f, g);
  EXPECT_DOUBLE_EQ(e.sup, 3.0);
  EXPECT_NEAR(e.l2, std::sqrt(0.25 * 9.0), 1e-15);
}

TEST(ErrorNorms, ObservedOrder) {
  EXPECT_DOUBLE_EQ(observed_order(4e-4, 1e-4), 2.0);
  EXPECT_DOUBLE_EQ(observed_order(8.0, 1.0), 3.0);
}
