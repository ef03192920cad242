#include "cnls/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "cnls/error.hpp"
#include "fft_lock.hpp"

namespace cnls {

namespace detail {

// Execution through the new-array interface is thread-safe; planning is not.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlans {
 public:
  explicit FftPlans(std::size_t n) : n_(n) {
    std::lock_guard lock(planner_mutex());
    auto* a = fftw_alloc_complex(n);
    auto* b = fftw_alloc_complex(n);
    const int size = static_cast<int>(n);
    constexpr unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_out_ = fftw_plan_dft_1d(size, a, b, FFTW_FORWARD, flags);
    backward_out_ = fftw_plan_dft_1d(size, a, b, FFTW_BACKWARD, flags);
    forward_in_ = fftw_plan_dft_1d(size, a, a, FFTW_FORWARD, flags);
    backward_in_ = fftw_plan_dft_1d(size, a, a, FFTW_BACKWARD, flags);
    fftw_free(a);
    fftw_free(b);
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  ~FftPlans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_out_);
    fftw_destroy_plan(backward_out_);
    fftw_destroy_plan(forward_in_);
    fftw_destroy_plan(backward_in_);
  }

  void execute(const Complex* in, Complex* out, Direction direction) const {
    const bool in_place = static_cast<const void*>(in) == static_cast<const void*>(out);
    fftw_plan plan = direction == Direction::forward
                         ? (in_place ? forward_in_ : forward_out_)
                         : (in_place ? backward_in_ : backward_out_);
    // fftw never writes to the input of an out-of-place complex DFT.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in));
    auto* dst = reinterpret_cast<fftw_complex*>(out);
    fftw_execute_dft(plan, src, dst);
    if (direction == Direction::inverse) {
      const double scale = 1.0 / static_cast<double>(n_);
      for (std::size_t k = 0; k < n_; ++k) out[k] *= scale;
    }
  }

 private:
  std::size_t n_;
  fftw_plan forward_out_;
  fftw_plan backward_out_;
  fftw_plan forward_in_;
  fftw_plan backward_in_;
};

}  // namespace detail

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

GridSpec::GridSpec(double half_width, std::size_t num_points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ConfigError("grid half width must be positive, got " + std::to_string(half_width));
  }
  if (num_points < 8 || !is_power_of_two(num_points)) {
    throw ConfigError("grid size must be a power of two >= 8, got " +
                      std::to_string(num_points));
  }
  half_width_ = half_width;
  spacing_ = 2.0 * half_width / static_cast<double>(num_points);
  nodes_.resize(num_points);
  frequencies_.resize(num_points);
  for (std::size_t k = 0; k < num_points; ++k) {
    nodes_[k] = -half_width + static_cast<double>(k) * spacing_;
  }
  for (std::size_t i = 0; i < num_points; ++i) {
    frequencies_[i] = std::numbers::pi * static_cast<double>(mode(i)) / half_width;
  }
  plans_ = std::make_shared<const detail::FftPlans>(num_points);
}

long GridSpec::mode(std::size_t slot) const noexcept {
  const auto n = static_cast<long>(nodes_.size());
  const auto i = static_cast<long>(slot);
  return i < n / 2 ? i : i - n;
}

void GridSpec::transform(std::span<const Complex> in, std::span<Complex> out,
                         Direction direction) const {
  if (in.size() != size() || out.size() != size()) {
    throw ContractViolation("spectral transform: field length " + std::to_string(in.size()) +
                            " does not match grid size " + std::to_string(size()));
  }
  plans_->execute(in.data(), out.data(), direction);
}

GridSpec make_grid(double half_width, std::size_t num_points) {
  return GridSpec(half_width, num_points);
}

ComplexField spectral_transform(std::span<const Complex> field, const GridSpec& grid,
                                Direction direction) {
  ComplexField out(field.size());
  grid.transform(field, out, direction);
  return out;
}

ComplexField spectral_derivative(std::span<const Complex> field, const GridSpec& grid) {
  ComplexField spectrum = spectral_transform(field, grid, Direction::forward);
  const auto nu = grid.frequencies();
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    spectrum[i] *= Complex(0.0, nu[i]);
  }
  grid.transform(spectrum, spectrum, Direction::inverse);
  return spectrum;
}

double quadrature(std::span<const double> field, const GridSpec& grid) {
  if (field.size() != grid.size()) {
    throw ContractViolation("quadrature: field length does not match grid size");
  }
  double sum = 0.0;
  for (double f : field) sum += f;
  return grid.spacing() * sum;
}

TrigInterpolant::TrigInterpolant(std::span<const double> samples, const GridSpec& grid)
    : x0_(grid.node(0)), n_(static_cast<double>(grid.size())) {
  if (samples.size() != grid.size()) {
    throw ContractViolation("interpolant: sample length does not match grid size");
  }
  ComplexField values(samples.begin(), samples.end());
  coefficients_ = spectral_transform(values, grid, Direction::forward);
  // Samples are real, so taking the real part in evaluate() turns the Nyquist
  // slot into the symmetric cos term.
  frequencies_.assign(grid.frequencies().begin(), grid.frequencies().end());
}

template <int Order>
double TrigInterpolant::evaluate(double x) const {
  const double s = x - x0_;
  double acc = 0.0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const double nu = frequencies_[i];
    const Complex phase = std::polar(1.0, nu * s);
    Complex term = coefficients_[i] * phase;
    if constexpr (Order == 1) term *= Complex(0.0, nu);
    if constexpr (Order == 2) term *= -nu * nu;
    acc += term.real();
  }
  return acc / n_;
}

double TrigInterpolant::value(double x) const { return evaluate<0>(x); }
double TrigInterpolant::derivative(double x) const { return evaluate<1>(x); }
double TrigInterpolant::second_derivative(double x) const { return evaluate<2>(x); }

}  // namespace cnls
