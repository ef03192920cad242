#pragma once

#include "cnls/grid.hpp"

namespace cnls {

/// The two component fields (u1, u2) sampled on a shared grid at time t.
struct FieldPair {
  ComplexField u1;
  ComplexField u2;
  double t = 0.0;

  FieldPair() = default;
  FieldPair(ComplexField first, ComplexField second, double time)
      : u1(std::move(first)), u2(std::move(second)), t(time) {}

  /// Zero fields of length n.
  static FieldPair zeros(std::size_t n, double time = 0.0) {
    return FieldPair(ComplexField(n), ComplexField(n), time);
  }

  ComplexField& component(int j) { return j == 1 ? u1 : u2; }
  const ComplexField& component(int j) const { return j == 1 ? u1 : u2; }

  std::size_t size() const noexcept { return u1.size(); }
};

/// |u_j|^2 at every node.
RealField density(std::span<const Complex> field);

}  // namespace cnls
