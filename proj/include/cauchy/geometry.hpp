#pragma once

// Boundary curves, graph patches in rotated local frames, and normals.
//
// A patch is a piece of the boundary written as x2 = gamma(x1) in a frame
// rotated by `frame_angle` from the global one:
//
//   global = R(frame_angle) * local,   R(a) = [cos a, -sin a; sin a, cos a]
//
// The canonical orientation has the domain locally below the graph, so the
// outward normal is (-gamma', 1) / theta with theta = sqrt(1 + gamma'^2).

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cauchy {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Number of extra grid nodes at each end of a patch so that a 5-point
/// central stencil reaches every nominal node.
inline constexpr std::size_t kMarginWidth = 2;

enum class Orientation { DomainBelow, DomainAbove };

std::string to_string(Orientation orientation);
/// Accepts "domain-below" / "domain-above"; throws std::invalid_argument.
Orientation orientation_from_string(std::string_view text);

/// Raised when a curve cannot be split into graph patches (corners,
/// vanishing velocity, too many patches).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FrameRotation {
 public:
  FrameRotation() = default;
  explicit FrameRotation(double angle);

  double angle() const { return angle_; }
  Mat2 matrix() const { return {{{c_, -s_}, {s_, c_}}}; }

  /// R v: local components to global components.
  Vec2 apply(const Vec2& v) const { return {c_ * v[0] - s_ * v[1], s_ * v[0] + c_ * v[1]}; }
  /// R^T v: global components to local components.
  Vec2 apply_inverse(const Vec2& v) const { return {c_ * v[0] + s_ * v[1], -s_ * v[0] + c_ * v[1]}; }

  FrameRotation inverse() const { return FrameRotation(-angle_); }

 private:
  double angle_ = 0.0;
  double c_ = 1.0;
  double s_ = 0.0;
};

enum class CurveKind { AnalyticClosed, SampledPeriodic, Open };

/// A regular curve t -> (x1, x2) on t in [0, 1). Closed curves are
/// 1-periodic in t; open arcs may be evaluated slightly outside [0, 1] so
/// that patch margins can be sampled.
struct ParametricCurve {
  std::function<Vec2(double)> position;
  std::function<Vec2(double)> velocity;
  CurveKind kind = CurveKind::AnalyticClosed;
  /// Side of the domain relative to the direction of increasing t. Only
  /// consulted for open arcs; closed curves use the sign of their turning.
  bool interior_on_left = false;

  bool closed() const { return kind != CurveKind::Open; }

  static ParametricCurve circle(double radius);
  static ParametricCurve ellipse(double semi_axis_1, double semi_axis_2);
  /// Open arc x2 = f(x1) for x1 in [x_begin, x_end], domain below.
  static ParametricCurve graph(std::function<double(double)> f, std::function<double(double)> df,
                               double x_begin, double x_end);
  /// Closed curve through equally spaced samples (t_k = k / M) using
  /// trigonometric interpolation.
  static ParametricCurve sampled_periodic(std::vector<Vec2> samples);
};

struct BoundaryPatch {
  double frame_angle = 0.0;
  double h = 0.0;
  std::vector<double> x1_nodes;
  std::vector<double> gamma;
  std::vector<double> gamma_prime;
  std::vector<double> mu;
  Orientation orientation = Orientation::DomainBelow;

  std::size_t size() const { return x1_nodes.size(); }
  FrameRotation rotation() const { return FrameRotation(frame_angle); }
  /// Global coordinates of node i.
  Vec2 node_position(std::size_t i) const;
};

/// Result of checking a patch against its invariants.
struct PatchAudit {
  bool ok = true;
  double max_abs_slope = 0.0;
  std::vector<std::string> violations;
};

PatchAudit audit_patch(const BoundaryPatch& patch, double max_slope = 1.0);
/// Throws std::invalid_argument listing the violations of audit_patch.
void validate_patch(const BoundaryPatch& patch, double max_slope = 1.0);

double theta(double gamma_prime);
/// Unit tangent (1, gamma') / theta, pointing towards increasing x1.
Vec2 tangent_at(double gamma_prime);
/// Outward unit normal of a graph patch.
Vec2 normal_at(double gamma_prime, Orientation orientation);

std::vector<Vec2> rotate_vector_trace(std::span<const Vec2> v, const FrameRotation& rot);

/// Uniform grid patch of x2 = f(x1) spanning [x_begin, x_end] with `nodes`
/// nodes (the first and last kMarginWidth nodes are the margins), frame
/// angle 0, domain below, mu = 1.
BoundaryPatch make_graph_patch(const std::function<double(double)>& f,
                               const std::function<double(double)>& df, double x_begin,
                               double x_end, std::size_t nodes);

/// Nodes [first, first + count) of a patch.
BoundaryPatch slice_patch(const BoundaryPatch& patch, std::size_t first, std::size_t count);

struct PartitionOptions {
  double max_slope = 1.0;
  double overlap_fraction = 0.2;
  /// Total nodes per patch including both margins.
  std::size_t nodes_per_patch = 64;
  /// Dense samples used for turning, arc length, and corner detection.
  std::size_t audit_samples = 4096;
  /// Largest tangent direction change allowed between adjacent dense samples.
  double corner_tolerance = 0.25;
};

/// Parameter interval [t_begin, t_end] covered by the nominal (non-margin)
/// part of a patch. For closed curves t_begin may be negative.
struct ParameterSpan {
  double t_begin = 0.0;
  double t_end = 0.0;
  double arc_length = 0.0;
};

struct Partition {
  std::vector<BoundaryPatch> patches;
  std::vector<ParameterSpan> spans;
  double total_turning = 0.0;
  double total_length = 0.0;
};

/// Splits a smooth curve into overlapping graph patches with
/// |gamma'| <= max_slope at every node. Throws std::invalid_argument on bad
/// options and GeometryError on corners or irregular points.
Partition partition_curve(const ParametricCurve& curve, const PartitionOptions& options = {});

}  // namespace cauchy
