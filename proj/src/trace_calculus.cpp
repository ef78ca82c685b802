#include "cauchy/trace_calculus.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cauchy {

namespace {

constexpr std::size_t kStencilWidth = 2 * kMarginWidth + 1;

void require_stencil_support(std::size_t n) {
  if (n < kStencilWidth)
    throw std::invalid_argument("trace has " + std::to_string(n) +
                                " nodes; the 5-point stencil needs at least 5");
}

}  // namespace

VectorTrace VectorTrace::zeros(std::size_t n, double h) {
  return {{std::vector<double>(n, 0.0), h}, {std::vector<double>(n, 0.0), h}};
}

ScalarTrace tangential_derivative(const ScalarTrace& t) {
  const std::size_t n = t.size();
  require_stencil_support(n);
  if (!(t.h > 0.0) || !std::isfinite(t.h))
    throw std::invalid_argument("grid spacing must be positive");
  ScalarTrace out{std::vector<double>(n - 4), t.h};
  const double scale = 1.0 / (12.0 * t.h);
  const auto& v = t.values;
  for (std::size_t i = 2; i + 2 < n; ++i)
    out.values[i - 2] = ((v[i - 2] - v[i + 2]) + 8.0 * (v[i + 1] - v[i - 1])) * scale;
  return out;
}

VectorTrace tangential_derivative(const VectorTrace& t) {
  return {tangential_derivative(t.c1), tangential_derivative(t.c2)};
}

std::vector<double> restrict_to_interior(const std::vector<double>& v) {
  require_stencil_support(v.size());
  return {v.begin() + kMarginWidth, v.end() - kMarginWidth};
}

ScalarTrace restrict_to_interior(const ScalarTrace& t) {
  return {restrict_to_interior(t.values), t.h};
}

VectorTrace restrict_to_interior(const VectorTrace& t) {
  return {restrict_to_interior(t.c1), restrict_to_interior(t.c2)};
}

VectorTrace rotate_vector_trace(const VectorTrace& v, const FrameRotation& rot) {
  VectorTrace out = v;
  for (std::size_t i = 0; i < v.size(); ++i) out.set(i, rot.apply(v.at(i)));
  return out;
}

}  // namespace cauchy
