#include "cauchy/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cauchy {

Vec2 AnalyticFlow::velocity(const Vec2& x) const {
  const StreamJet s = stream(x);
  return {s.d2, -s.d1};
}

Mat2 AnalyticFlow::gradient(const Vec2& x) const {
  const StreamJet s = stream(x);
  return {{{s.d12, s.d22}, {-s.d11, -s.d12}}};
}

const std::vector<AnalyticFlow>& builtin_flows() {
  static const std::vector<AnalyticFlow> flows = {
      {"rigid-rotation",
       [](const Vec2& x) {
         return StreamJet{0.5 * (x[0] * x[0] + x[1] * x[1]), x[0], x[1], 1.0, 0.0, 1.0};
       }},
      {"couette", [](const Vec2& x) { return StreamJet{0.5 * x[1] * x[1], 0.0, x[1], 0.0, 0.0, 1.0}; }},
      {"stagnation",
       [](const Vec2& x) { return StreamJet{x[0] * x[1], x[1], x[0], 0.0, 1.0, 0.0}; }},
      {"polynomial",
       [](const Vec2& x) {
         return StreamJet{x[0] * x[0] * x[1], 2.0 * x[0] * x[1], x[0] * x[0], 2.0 * x[1],
                          2.0 * x[0], 0.0};
       }},
      {"trigonometric",
       [](const Vec2& x) {
         const double s1 = std::sin(x[0]), c1 = std::cos(x[0]);
         const double s2 = std::sin(x[1]), c2 = std::cos(x[1]);
         return StreamJet{s1 * c2, c1 * c2, -s1 * s2, -s1 * c2, -c1 * s2, -s1 * c2};
       }},
      // u = (1 + 2 x2, 3 - 2 x1): translation plus rotation, zero strain.
      {"rigid-motion",
       [](const Vec2& x) {
         return StreamJet{x[1] + x[1] * x[1] + x[0] * x[0] - 3.0 * x[0], 2.0 * x[0] - 3.0,
                          1.0 + 2.0 * x[1], 2.0, 0.0, 2.0};
       }},
  };
  return flows;
}

const std::vector<AnalyticScalarField>& builtin_pressures() {
  static const std::vector<AnalyticScalarField> fields = {
      {"zero", [](const Vec2&) { return ScalarJet{0.0, 0.0, 0.0}; }},
      {"linear", [](const Vec2& x) { return ScalarJet{x[0] + 2.0 * x[1], 1.0, 2.0}; }},
      {"sine",
       [](const Vec2& x) {
         const double c = std::cos(x[0] + x[1]);
         return ScalarJet{std::sin(x[0] + x[1]), c, c};
       }},
  };
  return fields;
}

const std::vector<AnalyticScalarField>& builtin_viscosities() {
  static const std::vector<AnalyticScalarField> fields = {
      {"one", [](const Vec2&) { return ScalarJet{1.0, 0.0, 0.0}; }},
      {"variable",
       [](const Vec2& x) {
         const double s1 = std::sin(x[0]), c1 = std::cos(x[0]);
         const double s2 = std::sin(x[1]), c2 = std::cos(x[1]);
         return ScalarJet{2.0 + s1 * c2, c1 * c2, -s1 * s2};
       }},
  };
  return fields;
}

std::vector<CatalogEntry> builtin_catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& flow : builtin_flows())
    for (const auto& p : builtin_pressures())
      for (const auto& mu : builtin_viscosities())
        out.push_back({flow.name + "/" + p.name + "/" + mu.name, flow, p, mu});
  return out;
}

namespace {

template <class T>
std::optional<T> find_named(const std::vector<T>& items, std::string_view name) {
  auto it = std::find_if(items.begin(), items.end(), [name](const T& x) { return x.name == name; });
  if (it == items.end()) return std::nullopt;
  return *it;
}

}  // namespace

std::optional<AnalyticFlow> find_flow(std::string_view name) {
  return find_named(builtin_flows(), name);
}

std::optional<AnalyticScalarField> find_pressure(std::string_view name) {
  return find_named(builtin_pressures(), name);
}

std::optional<AnalyticScalarField> find_viscosity(std::string_view name) {
  return find_named(builtin_viscosities(), name);
}

double divergence_audit(const AnalyticFlow& flow, int points, double step, double extent,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-extent, extent);
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const Vec2 x{coord(rng), coord(rng)};
    const double du1 =
        flow.velocity({x[0] + step, x[1]})[0] - flow.velocity({x[0] - step, x[1]})[0];
    const double du2 =
        flow.velocity({x[0], x[1] + step})[1] - flow.velocity({x[0], x[1] - step})[1];
    worst = std::max(worst, std::abs((du1 + du2) / (2.0 * step)));
  }
  return worst;
}

NodeSample evaluate_node(const AnalyticFlow& flow, const AnalyticScalarField& pressure,
                         const AnalyticScalarField& viscosity, const Vec2& global_point,
                         double frame_angle, double gamma_prime, Orientation orientation) {
  const FrameRotation rot(frame_angle);
  const Mat2 r = rot.matrix();
  const Mat2 jg = flow.gradient(global_point);

  // Local gradient R^T J R.
  Mat2 jr{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) jr[i][j] = jg[i][0] * r[0][j] + jg[i][1] * r[1][j];
  Mat2 jl{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) jl[i][j] = r[0][i] * jr[0][j] + r[1][i] * jr[1][j];

  NodeSample s;
  s.u = rot.apply_inverse(flow.velocity(global_point));
  s.gradient = {jl[0][0], jl[1][0], jl[0][1], pressure.value(global_point)};
  s.d2u2 = jl[1][1];
  s.mu = viscosity.value(global_point);
  s.tangential = {s.gradient.f1 + gamma_prime * s.gradient.f3,
                  s.gradient.f2 + gamma_prime * s.d2u2};
  s.dnu = normal_derivative_from_gradient(s.gradient, gamma_prime, orientation);
  s.traction = traction_from_gradient(s.gradient, gamma_prime, s.mu, orientation);
  return s;
}

BoundaryPatch with_viscosity(BoundaryPatch patch, const AnalyticScalarField& viscosity) {
  for (std::size_t i = 0; i < patch.size(); ++i)
    patch.mu[i] = viscosity.value(patch.node_position(i));
  return patch;
}

ManufacturedTraces evaluate_traces(const AnalyticFlow& flow, const AnalyticScalarField& pressure,
                                   const AnalyticScalarField& viscosity,
                                   const BoundaryPatch& patch) {
  const std::size_t n = patch.size();
  const double h = patch.h;
  ManufacturedTraces out;
  out.patch = with_viscosity(patch, viscosity);
  out.dn = {VectorTrace::zeros(n, h), VectorTrace::zeros(n, h), {std::vector<double>(n), h}};
  out.stress = {VectorTrace::zeros(n, h), VectorTrace::zeros(n, h)};
  out.gradient.resize(n);
  out.tangential = VectorTrace::zeros(n, h);

  for (std::size_t i = 0; i < n; ++i) {
    const NodeSample s = evaluate_node(flow, pressure, viscosity, patch.node_position(i),
                                       patch.frame_angle, patch.gamma_prime[i], patch.orientation);
    out.dn.u.set(i, s.u);
    out.dn.dnu.set(i, s.dnu);
    out.dn.p[i] = s.gradient.f4;
    out.stress.u.set(i, s.u);
    out.stress.traction.set(i, s.traction);
    out.gradient.set(i, s.gradient);
    out.tangential.set(i, s.tangential);
  }
  return out;
}

}  // namespace cauchy
