#pragma once

// Boundary traces on a uniform patch grid and their tangential derivatives.

#include <cstddef>
#include <vector>

#include "cauchy/geometry.hpp"

namespace cauchy {

struct ScalarTrace {
  std::vector<double> values;
  double h = 0.0;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
};

/// Two components of a boundary vector field, in the patch's local frame.
struct VectorTrace {
  ScalarTrace c1;
  ScalarTrace c2;

  std::size_t size() const { return c1.size(); }
  Vec2 at(std::size_t i) const { return {c1[i], c2[i]}; }
  void set(std::size_t i, const Vec2& v) {
    c1[i] = v[0];
    c2[i] = v[1];
  }
  static VectorTrace zeros(std::size_t n, double h);
};

/// Five-point fourth-order central difference on the interior nodes:
///   (t[i-2] - 8 t[i-1] + 8 t[i+1] - t[i+2]) / (12 h)
/// Output has N - 4 values aligned with restrict_to_interior.
/// Throws std::invalid_argument when N < 5 or h <= 0.
ScalarTrace tangential_derivative(const ScalarTrace& t);
VectorTrace tangential_derivative(const VectorTrace& t);

/// Drops kMarginWidth nodes at each end. Throws when N < 5.
ScalarTrace restrict_to_interior(const ScalarTrace& t);
VectorTrace restrict_to_interior(const VectorTrace& t);
std::vector<double> restrict_to_interior(const std::vector<double>& v);

VectorTrace rotate_vector_trace(const VectorTrace& v, const FrameRotation& rot);

}  // namespace cauchy
