#include "cauchy/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace cauchy {

namespace {

void require_positive_viscosity(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("viscosity must be positive, got " + std::to_string(mu));
}

// Reflection x2 -> -x2 used to bring a domain-above patch into the
// domain-below convention. Vectors flip their second component; in the
// gradient d1 u2 and d2 u1 change sign while d1 u1 and p do not.
Vec2 reflect(const Vec2& v) { return {v[0], -v[1]}; }

GradientNode reflect(const GradientNode& f) { return {f.f1, -f.f2, -f.f3, f.f4}; }

bool reflected(Orientation orientation) { return orientation == Orientation::DomainAbove; }

Vec2 canonical_traction(const GradientNode& f, double gp, double mu) {
  const double q1 = -2.0 * gp * mu * f.f1 + mu * f.f2 + mu * f.f3 + gp * f.f4;
  const double q2 = -2.0 * mu * f.f1 - gp * mu * f.f2 - gp * mu * f.f3 - f.f4;
  const double th = theta(gp);
  return {q1 / th, q2 / th};
}

Vec2 canonical_normal_derivative(const GradientNode& f, double gp) {
  const double th = theta(gp);
  return {(-gp * f.f1 + f.f3) / th, (-gp * f.f2 - f.f1) / th};
}

DnGradient canonical_gradient_from_dn(double g_prime, double h_prime, const Vec2& n, double gp) {
  const double th = theta(gp);
  DnGradient out;
  out.f.f1 = (g_prime - gp * th * n[0]) / (th * th);
  out.f.f3 = th * n[0] + gp * out.f.f1;
  out.f.f2 = h_prime + gp * out.f.f1;
  out.residual = std::abs(-out.f.f1 - gp * out.f.f2 - th * n[1]);
  return out;
}

void require_grid(std::size_t n, const BoundaryPatch& patch, const char* what) {
  if (n != patch.size())
    throw std::invalid_argument(std::string(what) + " has " + std::to_string(n) +
                                " nodes but the patch has " + std::to_string(patch.size()));
}

void check_patch(const BoundaryPatch& patch) {
  validate_patch(patch, std::numeric_limits<double>::infinity());
}

// g', h' on the converted nodes and the index of the first converted node.
std::pair<VectorTrace, std::size_t> tangential_terms(const VectorTrace& u,
                                                     const BoundaryPatch& patch,
                                                     const std::optional<VectorTrace>& given) {
  if (given) {
    require_grid(given->size(), patch, "tangential derivative trace");
    require_grid(given->c2.size(), patch, "tangential derivative trace");
    return {*given, 0};
  }
  VectorTrace d = tangential_derivative(VectorTrace{{u.c1.values, patch.h}, {u.c2.values, patch.h}});
  return {std::move(d), kMarginWidth};
}

}  // namespace

Mat4 assemble_system(double gp, double mu) {
  require_positive_viscosity(mu);
  if (!std::isfinite(gp)) throw std::invalid_argument("gamma' must be finite");
  return {{{1.0, 0.0, gp, 0.0},
           {-gp, 1.0, 0.0, 0.0},
           {-2.0 * mu * gp, mu, mu, gp},
           {-2.0 * mu, -mu * gp, -mu * gp, -1.0}}};
}

double determinant(const Mat4& m) {
  Mat4 a = m;
  double det = 1.0;
  for (std::size_t k = 0; k < 4; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < 4; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) return 0.0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < 4; ++i) {
      const double l = a[i][k] / a[k][k];
      for (std::size_t j = k + 1; j < 4; ++j) a[i][j] -= l * a[k][j];
    }
  }
  return det;
}

double system_determinant(double gp, double mu) {
  const double s = 1.0 + gp * gp;
  return -mu * s * s;
}

Vec4 multiply(const Mat4& a, const Vec4& x) {
  Vec4 y{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) y[i] += a[i][j] * x[j];
  return y;
}

Vec4 lu_solve(Mat4 a, Vec4 b) {
  for (std::size_t k = 0; k < 4; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < 4; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) throw std::domain_error("singular 4x4 system");
    std::swap(a[piv], a[k]);
    std::swap(b[piv], b[k]);
    for (std::size_t i = k + 1; i < 4; ++i) {
      const double l = a[i][k] / a[k][k];
      for (std::size_t j = k + 1; j < 4; ++j) a[i][j] -= l * a[k][j];
      b[i] -= l * b[k];
    }
  }
  Vec4 x{};
  for (std::size_t k = 4; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < 4; ++j) s -= a[k][j] * x[j];
    x[k] = s / a[k][k];
  }
  return x;
}

Vec4 solve_system(double gp, double mu, const Vec4& rhs) {
  return lu_solve(assemble_system(gp, mu), rhs);
}

Vec2 traction_from_gradient(const GradientNode& f, double gp, double mu,
                            Orientation orientation) {
  require_positive_viscosity(mu);
  if (reflected(orientation)) return reflect(canonical_traction(reflect(f), -gp, mu));
  return canonical_traction(f, gp, mu);
}

Mat2 strain_rate(const GradientNode& f) {
  const double shear = 0.5 * (f.f2 + f.f3);
  return {{{f.f1, shear}, {shear, -f.f1}}};
}

Mat2 stress_tensor(const GradientNode& f, double mu) {
  const Mat2 eps = strain_rate(f);
  return {{{2.0 * mu * eps[0][0] - f.f4, 2.0 * mu * eps[0][1]},
           {2.0 * mu * eps[1][0], 2.0 * mu * eps[1][1] - f.f4}}};
}

Vec2 contract(const Mat2& sigma, const Vec2& nu) {
  return {sigma[0][0] * nu[0] + sigma[0][1] * nu[1], sigma[1][0] * nu[0] + sigma[1][1] * nu[1]};
}

Vec2 normal_derivative_from_gradient(const GradientNode& f, double gp, Orientation orientation) {
  const Vec2 below = canonical_normal_derivative(f, gp);
  if (reflected(orientation)) return {-below[0], -below[1]};
  return below;
}

DnGradient gradient_from_dn(double g_prime, double h_prime, const Vec2& dnu, double gp,
                            Orientation orientation) {
  if (!reflected(orientation)) return canonical_gradient_from_dn(g_prime, h_prime, dnu, gp);
  DnGradient out = canonical_gradient_from_dn(g_prime, -h_prime, reflect(dnu), -gp);
  out.f = reflect(out.f);
  return out;
}

DnNode stress_to_dn_node(const Vec2& tangential, const Vec2& traction, double gp, double mu,
                         Orientation orientation) {
  const bool flip = reflected(orientation);
  const double cgp = flip ? -gp : gp;
  const Vec2 t = flip ? reflect(traction) : traction;
  const double th = theta(cgp);
  const Vec4 rhs{tangential[0], flip ? -tangential[1] : tangential[1], th * t[0], th * t[1]};

  const Mat4 a = assemble_system(cgp, mu);
  const Vec4 f = lu_solve(a, rhs);
  const Vec4 back = multiply(a, f);
  double residual = 0.0;
  for (std::size_t i = 0; i < 4; ++i) residual = std::max(residual, std::abs(back[i] - rhs[i]));

  GradientNode grad{f[0], f[1], f[2], f[3]};
  if (flip) grad = reflect(grad);
  return {normal_derivative_from_gradient(grad, gp, orientation), grad.f4, residual};
}

StressNode dn_to_stress_node(const Vec2& tangential, const Vec2& dnu, double p, double gp,
                             double mu, Orientation orientation) {
  DnGradient g = gradient_from_dn(tangential[0], tangential[1], dnu, gp, orientation);
  g.f.f4 = p;
  return {traction_from_gradient(g.f, gp, mu, orientation), g.residual};
}

DnConversion stress_to_dn(const CauchyStress& data, const BoundaryPatch& patch,
                          const std::optional<VectorTrace>& tangential) {
  check_patch(patch);
  require_grid(data.u.c1.size(), patch, "u1");
  require_grid(data.u.c2.size(), patch, "u2");
  require_grid(data.traction.c1.size(), patch, "t1");
  require_grid(data.traction.c2.size(), patch, "t2");

  auto [deriv, first] = tangential_terms(data.u, patch, tangential);
  const std::size_t count = deriv.size();

  DnConversion out;
  out.first_node = first;
  out.data.u = VectorTrace::zeros(count, patch.h);
  out.data.dnu = VectorTrace::zeros(count, patch.h);
  out.data.p = ScalarTrace{std::vector<double>(count, 0.0), patch.h};
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = first + k;
    const DnNode node = stress_to_dn_node(deriv.at(k), data.traction.at(i), patch.gamma_prime[i],
                                          patch.mu[i], patch.orientation);
    out.data.u.set(k, data.u.at(i));
    out.data.dnu.set(k, node.dnu);
    out.data.p[k] = node.p;
    out.max_solve_residual = std::max(out.max_solve_residual, node.solve_residual);
  }
  return out;
}

StressConversion dn_to_stress(const CauchyDN& data, const BoundaryPatch& patch,
                              const std::optional<VectorTrace>& tangential) {
  check_patch(patch);
  require_grid(data.u.c1.size(), patch, "u1");
  require_grid(data.u.c2.size(), patch, "u2");
  require_grid(data.dnu.c1.size(), patch, "dnu1");
  require_grid(data.dnu.c2.size(), patch, "dnu2");
  require_grid(data.p.size(), patch, "p");

  auto [deriv, first] = tangential_terms(data.u, patch, tangential);
  const std::size_t count = deriv.size();

  StressConversion out;
  out.first_node = first;
  out.data.u = VectorTrace::zeros(count, patch.h);
  out.data.traction = VectorTrace::zeros(count, patch.h);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = first + k;
    const StressNode node = dn_to_stress_node(deriv.at(k), data.dnu.at(i), data.p[i],
                                              patch.gamma_prime[i], patch.mu[i], patch.orientation);
    out.data.u.set(k, data.u.at(i));
    out.data.traction.set(k, node.traction);
    out.max_residual = std::max(out.max_residual, node.residual);
  }
  return out;
}

}  // namespace cauchy
