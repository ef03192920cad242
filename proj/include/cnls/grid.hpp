#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace cnls {

using Complex = std::complex<double>;
using ComplexField = std::vector<Complex>;
using RealField = std::vector<double>;

enum class Direction { forward, inverse };

namespace detail {
class FftPlans;
}

/// Uniform periodic grid on [-a, a) with N nodes.
///
/// Nodes are x_k = -a + k h, h = 2a/N, k = 0..N-1; the point x = a is
/// identified with x = -a. Frequencies nu_m = pi m / a are stored in FFT
/// order: slot i holds mode m = i for i < N/2 and m = i - N otherwise.
class GridSpec {
 public:
  /// Throws ConfigError unless a > 0 and N is a power of two >= 8.
  GridSpec(double half_width, std::size_t num_points);

  double half_width() const noexcept { return half_width_; }
  double length() const noexcept { return 2.0 * half_width_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double spacing() const noexcept { return spacing_; }

  std::span<const double> nodes() const noexcept { return nodes_; }
  double node(std::size_t k) const { return nodes_[k]; }

  /// Frequencies in FFT slot order.
  std::span<const double> frequencies() const noexcept { return frequencies_; }

  /// Signed mode number stored in FFT slot i.
  long mode(std::size_t slot) const noexcept;

  /// Forward: out_m = sum_l in_l exp(-i nu_m (x_l - x_0)).
  /// Inverse: out_k = (1/N) sum_m in_m exp(i nu_m (x_k - x_0)).
  /// `in` and `out` may alias exactly (in-place transform).
  void transform(std::span<const Complex> in, std::span<Complex> out,
                 Direction direction) const;

 private:
  double half_width_;
  double spacing_;
  RealField nodes_;
  RealField frequencies_;
  std::shared_ptr<const detail::FftPlans> plans_;
};

GridSpec make_grid(double half_width, std::size_t num_points);

ComplexField spectral_transform(std::span<const Complex> field, const GridSpec& grid,
                                Direction direction);

/// Inverse transform of (i nu_m u_hat_m). Exact for band-limited fields.
ComplexField spectral_derivative(std::span<const Complex> field, const GridSpec& grid);

/// Rectangle rule h * sum_k f_k (the trapezoid rule on a periodic grid).
double quadrature(std::span<const double> field, const GridSpec& grid);

/// Evaluates the trigonometric interpolant of periodic grid samples (and its
/// first two derivatives) at arbitrary positions.
class TrigInterpolant {
 public:
  TrigInterpolant(std::span<const double> samples, const GridSpec& grid);

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

 private:
  template <int Order>
  double evaluate(double x) const;

  double x0_;
  double n_;
  ComplexField coefficients_;
  RealField frequencies_;
};

}  // namespace cnls
