#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"

#include "cauchy/trace_calculus.hpp"

using namespace cauchy;

namespace {

ScalarTrace sample(const std::function<double(double)>& f, double x0, double h, std::size_t n) {
  ScalarTrace t{std::vector<double>(n), h};
  for (std::size_t i = 0; i < n; ++i) t[i] = f(x0 + static_cast<double>(i) * h);
  return t;
}

// Max error of the stencil derivative of sin on [0, 2] against cos.
double sin_error(std::size_t intervals) {
  const double h = 2.0 / static_cast<double>(intervals);
  const ScalarTrace t = sample([](double x) { return std::sin(x); }, -2.0 * h, h, intervals + 5);
  const ScalarTrace d = tangential_derivative(t);
  double err = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k)
    err = std::max(err, std::abs(d[k] - std::cos(static_cast<double>(k) * h)));
  return err;
}

}  // namespace

TEST_CASE("derivative of a constant vanishes") {
  const ScalarTrace t{std::vector<double>(12, 4.25), 0.1};
  const ScalarTrace d = tangential_derivative(t);
  CHECK(d.size() == 8);
  for (double v : d.values) CHECK(v == 0.0);
}

TEST_CASE("linear trace differentiates exactly") {
  for (double h : {0.5, 0.013, 1e-3}) {
    const ScalarTrace d = tangential_derivative(sample([](double x) { return 3.0 * x; }, -1.0, h, 20));
    for (double v : d.values) CHECK(std::abs(v - 3.0) <= 1e-12 * 3.0);
  }
}

TEST_CASE("exact on monomials up to degree four") {
  for (int degree = 0; degree <= 4; ++degree) {
    const double h = 4.0 / 40.0;
    const auto f = [degree](double x) { return std::pow(x, degree); };
    const ScalarTrace t = sample(f, -2.0, h, 41);
    const ScalarTrace d = tangential_derivative(t);
    for (std::size_t k = 0; k < d.size(); ++k) {
      const double x = -2.0 + static_cast<double>(k + 2) * h;
      const double exact = degree == 0 ? 0.0 : degree * std::pow(x, degree - 1);
      CHECK(std::abs(d[k] - exact) <= 1e-11 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("fourth-order convergence on sin") {
  const double e1 = sin_error(32);
  const double e2 = sin_error(64);
  const double e3 = sin_error(128);
  const double ratio = e1 / e2;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
  const double order1 = std::log2(e1 / e2);
  const double order2 = std::log2(e2 / e3);
  CHECK(order1 >= 3.7);
  CHECK(order1 <= 4.3);
  CHECK(order2 >= 3.7);
  CHECK(order2 <= 4.3);
}

TEST_CASE("derivative is linear") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 30;
    const double h = 0.05;
    ScalarTrace s{std::vector<double>(n), h}, t{std::vector<double>(n), h};
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = val(rng);
      t[i] = val(rng);
    }
    const double a = val(rng), b = val(rng);
    ScalarTrace combo{std::vector<double>(n), h};
    for (std::size_t i = 0; i < n; ++i) combo[i] = a * s[i] + b * t[i];
    const ScalarTrace lhs = tangential_derivative(combo);
    const ScalarTrace ds = tangential_derivative(s);
    const ScalarTrace dt = tangential_derivative(t);
    double scale = 0.0;
    for (std::size_t k = 0; k < lhs.size(); ++k)
      scale = std::max(scale, std::abs(a * ds[k]) + std::abs(b * dt[k]));
    for (std::size_t k = 0; k < lhs.size(); ++k)
      CHECK(std::abs(lhs[k] - (a * ds[k] + b * dt[k])) <= 1e-13 * scale);
  }
}

TEST_CASE("restrict_to_interior lengths") {
  CHECK(restrict_to_interior(ScalarTrace{std::vector<double>(9, 1.0), 0.1}).size() == 5);
  CHECK(restrict_to_interior(ScalarTrace{std::vector<double>(5, 1.0), 0.1}).size() == 1);
  CHECK_THROWS_AS(restrict_to_interior(ScalarTrace{std::vector<double>(4, 1.0), 0.1}),
                  std::invalid_argument);

  std::vector<double> v{0, 1, 2, 3, 4, 5, 6};
  CHECK(restrict_to_interior(v) == std::vector<double>{2, 3, 4});
}

TEST_CASE("interior alignment with the stencil output") {
  const VectorTrace u{sample([](double x) { return x * x; }, 0.0, 0.25, 10),
                      sample([](double x) { return -x; }, 0.0, 0.25, 10)};
  const VectorTrace d = tangential_derivative(u);
  const VectorTrace r = restrict_to_interior(u);
  REQUIRE(d.size() == r.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double x = std::sqrt(r.c1[k]);
    CHECK(d.c1[k] == doctest::Approx(2.0 * x));
    CHECK(d.c2[k] == doctest::Approx(-1.0));
  }
}

TEST_CASE("short traces are rejected") {
  CHECK_THROWS_AS(tangential_derivative(ScalarTrace{std::vector<double>(4, 0.0), 0.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(tangential_derivative(ScalarTrace{std::vector<double>(8, 0.0), 0.0}),
                  std::invalid_argument);
}
