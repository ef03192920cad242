#include "cnls/profiles.hpp"

#include <cmath>
#include <string>

#include "cnls/error.hpp"

namespace cnls {

RealField density(std::span<const Complex> field) {
  RealField out(field.size());
  for (std::size_t k = 0; k < field.size(); ++k) out[k] = std::norm(field[k]);
  return out;
}

void CoupledParams::validate() const {
  if (!(mu1 > 0.0) || !(mu2 > 0.0)) {
    throw ConfigError("self-interaction strengths mu1, mu2 must be positive");
  }
  if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(beta)) {
    throw ConfigError("coupling parameters must be finite");
  }
}

void SolitonSpec::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ConfigError("soliton frequency omega must be positive, got " + std::to_string(omega));
  }
  if (component != 1 && component != 2) {
    throw ConfigError("soliton component must be 1 or 2, got " + std::to_string(component));
  }
  if (!std::isfinite(v) || !std::isfinite(x0) || !std::isfinite(gamma)) {
    throw ConfigError("soliton parameters must be finite");
  }
}

double ground_profile(double omega, double x) {
  if (!(omega > 0.0)) {
    throw DomainError("ground profile requires omega > 0, got " + std::to_string(omega));
  }
  const double s = std::sqrt(omega);
  return std::sqrt(2.0 * omega) / std::cosh(s * x);
}

ComplexField soliton_field(const SolitonSpec& spec, double mu, double t,
                           const GridSpec& grid) {
  if (!(mu > 0.0)) {
    throw DomainError("soliton amplitude requires mu > 0, got " + std::to_string(mu));
  }
  if (!(spec.omega > 0.0)) {
    throw DomainError("soliton requires omega > 0, got " + std::to_string(spec.omega));
  }
  const double scale = 1.0 / std::sqrt(mu);
  const double time_phase = spec.omega * t - spec.v * spec.v * t / 4.0 + spec.gamma;
  ComplexField out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.node(k);
    const double amplitude = scale * ground_profile(spec.omega, x - spec.v * t - spec.x0);
    out[k] = std::polar(amplitude, time_phase + spec.v * x / 2.0);
  }
  return out;
}

FieldPair initial_data(const SolitonSpec& spec1, const SolitonSpec& spec2,
                       const CoupledParams& params, double t0, const GridSpec& grid) {
  if (spec1.component != 1 || spec2.component != 2) {
    throw ConfigError("initial data expects soliton specs for components 1 and 2 in order");
  }
  spec1.validate();
  spec2.validate();
  params.validate();
  return FieldPair(soliton_field(spec1, params.mu1, t0, grid),
                   soliton_field(spec2, params.mu2, t0, grid), t0);
}

}  // namespace cnls
