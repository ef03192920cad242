#pragma once

#include <cstddef>
#include <functional>

#include "cnls/field_pair.hpp"
#include "cnls/grid.hpp"
#include "cnls/profiles.hpp"

namespace cnls {

struct EvolveConfig {
  double tau = 1e-3;
  double t_final = 0.0;
  /// 0 disables the corresponding sink.
  std::size_t snapshot_stride = 1000;
  std::size_t diagnostics_stride = 100;

  /// Number of steps of size tau from t_start to t_final. Throws ConfigError
  /// if tau <= 0 or the interval is not an integer multiple of tau.
  std::size_t step_count(double t_start) const;
};

/// Sinks receive the state after `step` steps. They are invoked at step 0,
/// every stride steps, and once more at the final step.
struct EvolveSinks {
  std::function<void(const FieldPair&, std::size_t step)> snapshot;
  std::function<void(const FieldPair&, std::size_t step)> diagnostics;
};

/// Pointwise phase rotation
///   u1 <- exp(i dt (mu1 |u1|^2 + beta |u2|^2)) u1,  u2 symmetric,
/// with both moduli frozen at entry.
FieldPair nonlinear_half_step(FieldPair state, const CoupledParams& params, double dt);

/// Exact free flow i u_t + u_xx = 0 over tau: spectrum times exp(-i tau nu^2).
FieldPair linear_full_step(FieldPair state, const GridSpec& grid, double tau);

/// Strang composition N(tau/2) L(tau) N(tau/2); advances t by tau. Negative
/// tau steps backward. Throws DivergenceError on non-finite fields.
FieldPair strang_step(FieldPair state, const CoupledParams& params, const GridSpec& grid,
                      double tau);

/// Reusable stepper for a fixed (params, grid, tau): caches the linear
/// multiplier and scratch storage.
class SplitStepPropagator {
 public:
  SplitStepPropagator(const CoupledParams& params, const GridSpec& grid, double tau);

  /// One Strang step in place.
  void step(FieldPair& state);

  double tau() const noexcept { return tau_; }

 private:
  void nonlinear(FieldPair& state, double dt) const;
  void linear(ComplexField& field);

  CoupledParams params_;
  GridSpec grid_;
  double tau_;
  ComplexField multiplier_;
};

/// Repeats strang_step from state.t to config.t_final (either direction).
FieldPair evolve(FieldPair state, const CoupledParams& params, const GridSpec& grid,
                 const EvolveConfig& config, const EvolveSinks& sinks = {});

}  // namespace cnls
