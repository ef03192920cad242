#include "cnls/splitstep.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "cnls/error.hpp"

namespace cnls {

namespace {

void check_sizes(const FieldPair& state, const GridSpec& grid) {
  if (state.u1.size() != grid.size() || state.u2.size() != grid.size()) {
    throw ContractViolation("field pair length does not match grid size");
  }
}

void rotate_phases(FieldPair& state, const CoupledParams& params, double dt) {
  const std::size_t n = state.u1.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double rho1 = std::norm(state.u1[k]);
    const double rho2 = std::norm(state.u2[k]);
    state.u1[k] *= std::polar(1.0, dt * (params.mu1 * rho1 + params.beta * rho2));
    state.u2[k] *= std::polar(1.0, dt * (params.mu2 * rho2 + params.beta * rho1));
  }
}

bool all_finite(const FieldPair& state) {
  double sum = 0.0;
  for (const auto& z : state.u1) sum += std::norm(z);
  for (const auto& z : state.u2) sum += std::norm(z);
  return std::isfinite(sum);
}

}  // namespace

std::size_t EvolveConfig::step_count(double t_start) const {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ConfigError("time step tau must be positive");
  }
  const double span = std::abs(t_final - t_start);
  const double ratio = span / tau;
  const double steps = std::round(ratio);
  // Decimal step sizes are not exactly representable, so allow a few ulps of
  // the interval rather than demanding bitwise integrality.
  if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, steps)) {
    std::ostringstream msg;
    msg << "interval [" << t_start << ", " << t_final << "] is not a multiple of tau = "
        << tau;
    throw ConfigError(msg.str());
  }
  return static_cast<std::size_t>(steps);
}

FieldPair nonlinear_half_step(FieldPair state, const CoupledParams& params, double dt) {
  if (state.u1.size() != state.u2.size()) {
    throw ContractViolation("field pair components differ in length");
  }
  rotate_phases(state, params, dt);
  return state;
}

FieldPair linear_full_step(FieldPair state, const GridSpec& grid, double tau) {
  check_sizes(state, grid);
  const auto nu = grid.frequencies();
  for (ComplexField* field : {&state.u1, &state.u2}) {
    grid.transform(*field, *field, Direction::forward);
    for (std::size_t i = 0; i < field->size(); ++i) {
      (*field)[i] *= std::polar(1.0, -tau * nu[i] * nu[i]);
    }
    grid.transform(*field, *field, Direction::inverse);
  }
  return state;
}

FieldPair strang_step(FieldPair state, const CoupledParams& params, const GridSpec& grid,
                      double tau) {
  SplitStepPropagator propagator(params, grid, tau);
  propagator.step(state);
  return state;
}

SplitStepPropagator::SplitStepPropagator(const CoupledParams& params, const GridSpec& grid,
                                         double tau)
    : params_(params), grid_(grid), tau_(tau), multiplier_(grid.size()) {
  const auto nu = grid.frequencies();
  for (std::size_t i = 0; i < nu.size(); ++i) {
    multiplier_[i] = std::polar(1.0, -tau * nu[i] * nu[i]);
  }
}

void SplitStepPropagator::nonlinear(FieldPair& state, double dt) const {
  rotate_phases(state, params_, dt);
}

void SplitStepPropagator::linear(ComplexField& field) {
  grid_.transform(field, field, Direction::forward);
  for (std::size_t i = 0; i < field.size(); ++i) field[i] *= multiplier_[i];
  grid_.transform(field, field, Direction::inverse);
}

void SplitStepPropagator::step(FieldPair& state) {
  check_sizes(state, grid_);
  const double t_start = state.t;
  nonlinear(state, 0.5 * tau_);
  linear(state.u1);
  linear(state.u2);
  nonlinear(state, 0.5 * tau_);
  if (!all_finite(state)) {
    std::ostringstream msg;
    msg << "integration diverged during the step starting at t = " << t_start;
    throw DivergenceError(msg.str(), t_start);
  }
  state.t = t_start + tau_;
}

FieldPair evolve(FieldPair state, const CoupledParams& params, const GridSpec& grid,
                 const EvolveConfig& config, const EvolveSinks& sinks) {
  check_sizes(state, grid);
  const std::size_t steps = config.step_count(state.t);
  const double t_start = state.t;
  const double signed_tau = config.t_final >= t_start ? config.tau : -config.tau;
  SplitStepPropagator propagator(params, grid, signed_tau);

  auto emit = [&](std::size_t n) {
    const bool last = n == steps;
    if (sinks.diagnostics && config.diagnostics_stride > 0 &&
        (n % config.diagnostics_stride == 0 || last)) {
      sinks.diagnostics(state, n);
    }
    if (sinks.snapshot && config.snapshot_stride > 0 &&
        (n % config.snapshot_stride == 0 || last)) {
      sinks.snapshot(state, n);
    }
  };

  emit(0);
  for (std::size_t n = 1; n <= steps; ++n) {
    propagator.step(state);
    // Recompute from the start time so round-off in t does not accumulate.
    state.t = n == steps ? config.t_final : t_start + static_cast<double>(n) * signed_tau;
    emit(n);
  }
  return state;
}

}  // namespace cnls
