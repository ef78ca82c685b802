#pragma once

// Closed-form divergence-free flows and scalar fields used as ground truth.
// Velocities come from a stream function psi as u = (d2 psi, -d1 psi), so
// div u = 0 holds identically.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cauchy/geometry.hpp"
#include "cauchy/trace_calculus.hpp"
#include "cauchy/transform.hpp"

namespace cauchy {

/// psi and its first and second partials at a point.
struct StreamJet {
  double psi = 0.0;
  double d1 = 0.0, d2 = 0.0;
  double d11 = 0.0, d12 = 0.0, d22 = 0.0;
};

struct AnalyticFlow {
  std::string name;
  std::function<StreamJet(const Vec2&)> stream;

  Vec2 velocity(const Vec2& x) const;
  /// grad[i][j] = d_j u_i in global coordinates.
  Mat2 gradient(const Vec2& x) const;
};

struct ScalarJet {
  double value = 0.0;
  double d1 = 0.0, d2 = 0.0;
};

struct AnalyticScalarField {
  std::string name;
  std::function<ScalarJet(const Vec2&)> jet;

  double value(const Vec2& x) const { return jet(x).value; }
};

struct CatalogEntry {
  std::string name;  // "<flow>/<pressure>/<viscosity>"
  AnalyticFlow flow;
  AnalyticScalarField pressure;
  AnalyticScalarField viscosity;
};

const std::vector<AnalyticFlow>& builtin_flows();
const std::vector<AnalyticScalarField>& builtin_pressures();
const std::vector<AnalyticScalarField>& builtin_viscosities();

/// Every (flow, pressure, viscosity) combination of the built-in fields.
std::vector<CatalogEntry> builtin_catalog();

std::optional<AnalyticFlow> find_flow(std::string_view name);
std::optional<AnalyticScalarField> find_pressure(std::string_view name);
std::optional<AnalyticScalarField> find_viscosity(std::string_view name);

/// Largest |d1 u1 + d2 u2| by central differences of the velocity at random
/// points of [-extent, extent]^2.
double divergence_audit(const AnalyticFlow& flow, int points = 100, double step = 1e-5,
                        double extent = 2.0, std::uint64_t seed = 7);

/// Exact data at a single boundary point, in the local frame given by
/// `frame_angle`, for a boundary with local slope `gamma_prime`.
struct NodeSample {
  Vec2 u{};
  GradientNode gradient;
  double d2u2 = 0.0;
  double mu = 0.0;
  Vec2 tangential{};  // (g', h') by the chain rule
  Vec2 dnu{};
  Vec2 traction{};
};

NodeSample evaluate_node(const AnalyticFlow& flow, const AnalyticScalarField& pressure,
                         const AnalyticScalarField& viscosity, const Vec2& global_point,
                         double frame_angle, double gamma_prime, Orientation orientation);

struct ManufacturedTraces {
  BoundaryPatch patch;  // input patch with mu sampled from the viscosity field
  CauchyDN dn;
  CauchyStress stress;
  GradientTrace gradient;
  VectorTrace tangential;  // exact (g', h') on every node
};

BoundaryPatch with_viscosity(BoundaryPatch patch, const AnalyticScalarField& viscosity);

ManufacturedTraces evaluate_traces(const AnalyticFlow& flow, const AnalyticScalarField& pressure,
                                   const AnalyticScalarField& viscosity,
                                   const BoundaryPatch& patch);

}  // namespace cauchy
