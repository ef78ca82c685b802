#pragma once

// Conversion between the two boundary data formats of an incompressible
// flow on a graph patch x2 = gamma(x1):
//
//   DN format:     (u, d_nu u, p)
//   stress format: (u, sigma(u, p) nu),  sigma = 2 mu eps(u) - p I
//
// On each node the unknowns f = (d1 u1, d1 u2, d2 u1, p) satisfy A f = rhs:
//
//   [ 1        0        gamma'    0      ] [f1]   [ g'  ]
//   [ -gamma'  1        0         0      ] [f2] = [ h'  ]
//   [ -2mu g'  mu       mu        gamma' ] [f3]   [ q1  ]
//   [ -2mu    -mu g'   -mu g'    -1      ] [f4]   [ q2  ]
//
// where g, h are the traces of u1, u2 along the patch, (q1, q2) is
// theta * sigma nu, theta = sqrt(1 + gamma'^2), and d2 u2 = -d1 u1 by
// incompressibility. det A = -mu (1 + gamma'^2)^2, so A is invertible
// whenever mu > 0.
//
// The node-level formulas assume the domain lies below the graph. Patches
// with the domain above are reflected through x2 -> -x2 before the node
// formulas are applied and reflected back afterwards.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "cauchy/geometry.hpp"
#include "cauchy/trace_calculus.hpp"

namespace cauchy {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;

/// Boundary gradient data at one node: f1 = d1 u1, f2 = d1 u2, f3 = d2 u1,
/// f4 = p. The missing d2 u2 is -f1.
struct GradientNode {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double f4 = 0.0;
};

struct GradientTrace {
  std::vector<double> f1, f2, f3, f4;

  std::size_t size() const { return f1.size(); }
  GradientNode node(std::size_t i) const { return {f1[i], f2[i], f3[i], f4[i]}; }
  void resize(std::size_t n) {
    f1.resize(n);
    f2.resize(n);
    f3.resize(n);
    f4.resize(n);
  }
  void set(std::size_t i, const GradientNode& f) {
    f1[i] = f.f1;
    f2[i] = f.f2;
    f3[i] = f.f3;
    f4[i] = f.f4;
  }
};

struct CauchyDN {
  VectorTrace u;
  VectorTrace dnu;
  ScalarTrace p;

  std::size_t size() const { return u.size(); }
};

struct CauchyStress {
  VectorTrace u;
  VectorTrace traction;

  std::size_t size() const { return u.size(); }
};

Mat4 assemble_system(double gamma_prime, double mu);

/// LU with partial pivoting; returns the product of the pivots with the
/// permutation sign.
double determinant(const Mat4& a);

/// -mu (1 + gamma'^2)^2.
double system_determinant(double gamma_prime, double mu);

Vec4 multiply(const Mat4& a, const Vec4& x);

/// Solves a x = b by LU with partial pivoting. Throws std::domain_error on a
/// zero pivot.
Vec4 lu_solve(Mat4 a, Vec4 b);

/// Unique f with assemble_system(gamma', mu) f = rhs.
Vec4 solve_system(double gamma_prime, double mu, const Vec4& rhs);

/// sigma nu from the gradient trace using the expanded row formulas:
///   q1 = -2 gamma' mu f1 + mu f2 + mu f3 + gamma' f4
///   q2 = -2 mu f1 - gamma' mu f2 - gamma' mu f3 - f4
///   sigma nu = (q1, q2) / theta
Vec2 traction_from_gradient(const GradientNode& f, double gamma_prime, double mu,
                            Orientation orientation = Orientation::DomainBelow);

/// Strain rate tensor with d2 u2 = -d1 u1.
Mat2 strain_rate(const GradientNode& f);
/// 2 mu eps - p I.
Mat2 stress_tensor(const GradientNode& f, double mu);
/// Tensor-vector product sigma nu.
Vec2 contract(const Mat2& sigma, const Vec2& nu);

/// grad(u) nu with d2 u2 = -f1.
Vec2 normal_derivative_from_gradient(const GradientNode& f, double gamma_prime,
                                     Orientation orientation = Orientation::DomainBelow);

struct DnGradient {
  GradientNode f;  // f4 is left at zero
  double residual = 0.0;
};

/// Recovers (f1, f2, f3) from the tangential derivatives (g', h') and the
/// normal derivative. Uses the g' relation and both normal derivative
/// components; the h' relation is not used for the solve and its violation
/// is reported as `residual`, which vanishes for data coming from a
/// divergence-free field.
DnGradient gradient_from_dn(double g_prime, double h_prime, const Vec2& dnu,
                            double gamma_prime, Orientation orientation = Orientation::DomainBelow);

struct DnNode {
  Vec2 dnu{};
  double p = 0.0;
  double solve_residual = 0.0;
};

struct StressNode {
  Vec2 traction{};
  double residual = 0.0;
};

/// (g', h', sigma nu) -> (d_nu u, p) at one node.
DnNode stress_to_dn_node(const Vec2& tangential, const Vec2& traction, double gamma_prime,
                         double mu, Orientation orientation = Orientation::DomainBelow);

/// (g', h', d_nu u, p) -> sigma nu at one node, plus the consistency residual.
StressNode dn_to_stress_node(const Vec2& tangential, const Vec2& dnu, double p,
                             double gamma_prime, double mu,
                             Orientation orientation = Orientation::DomainBelow);

/// Patch-level conversions. When `tangential` (g', h' on every patch node)
/// is supplied all nodes are converted; otherwise g', h' come from the
/// 5-point stencil and only the interior nodes [2, N - 2) are converted.
struct DnConversion {
  CauchyDN data;
  std::size_t first_node = 0;
  double max_solve_residual = 0.0;
};

struct StressConversion {
  CauchyStress data;
  std::size_t first_node = 0;
  double max_residual = 0.0;
};

DnConversion stress_to_dn(const CauchyStress& data, const BoundaryPatch& patch,
                          const std::optional<VectorTrace>& tangential = std::nullopt);

StressConversion dn_to_stress(const CauchyDN& data, const BoundaryPatch& patch,
                              const std::optional<VectorTrace>& tangential = std::nullopt);

}  // namespace cauchy
