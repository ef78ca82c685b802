#include "cauchy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

namespace cauchy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  return a;
}

double direction(const Vec2& v) { return std::atan2(v[1], v[0]); }

}  // namespace

std::string to_string(Orientation orientation) {
  return orientation == Orientation::DomainBelow ? "domain-below" : "domain-above";
}

Orientation orientation_from_string(std::string_view text) {
  if (text == "domain-below") return Orientation::DomainBelow;
  if (text == "domain-above") return Orientation::DomainAbove;
  throw std::invalid_argument("unknown orientation '" + std::string(text) + "'");
}

FrameRotation::FrameRotation(double angle)
    : angle_(angle), c_(std::cos(angle)), s_(std::sin(angle)) {}

// ---------------------------------------------------------------------------
// Curves

ParametricCurve ParametricCurve::circle(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("circle radius must be positive");
  ParametricCurve c;
  c.position = [radius](double t) {
    return Vec2{radius * std::cos(kTwoPi * t), radius * std::sin(kTwoPi * t)};
  };
  c.velocity = [radius](double t) {
    return Vec2{-kTwoPi * radius * std::sin(kTwoPi * t), kTwoPi * radius * std::cos(kTwoPi * t)};
  };
  c.kind = CurveKind::AnalyticClosed;
  return c;
}

ParametricCurve ParametricCurve::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("ellipse semi-axes must be positive");
  ParametricCurve c;
  c.position = [a, b](double t) {
    return Vec2{a * std::cos(kTwoPi * t), b * std::sin(kTwoPi * t)};
  };
  c.velocity = [a, b](double t) {
    return Vec2{-kTwoPi * a * std::sin(kTwoPi * t), kTwoPi * b * std::cos(kTwoPi * t)};
  };
  c.kind = CurveKind::AnalyticClosed;
  return c;
}

ParametricCurve ParametricCurve::graph(std::function<double(double)> f,
                                       std::function<double(double)> df, double x_begin,
                                       double x_end) {
  if (!(x_end > x_begin)) throw std::invalid_argument("graph interval must be increasing");
  ParametricCurve c;
  const double span = x_end - x_begin;
  c.position = [f, x_begin, span](double t) {
    const double x = x_begin + span * t;
    return Vec2{x, f(x)};
  };
  c.velocity = [df, x_begin, span](double t) {
    const double x = x_begin + span * t;
    return Vec2{span, span * df(x)};
  };
  c.kind = CurveKind::Open;
  c.interior_on_left = false;
  return c;
}

ParametricCurve ParametricCurve::sampled_periodic(std::vector<Vec2> samples) {
  const std::size_t m = samples.size();
  if (m < 8) throw std::invalid_argument("sampled curve needs at least 8 samples");

  // Trigonometric interpolant: x(t) = sum_n c_n exp(2 pi i n t), |n| <= m/2,
  // with the Nyquist term split evenly between +m/2 and -m/2.
  using cplx = std::complex<double>;
  struct Series {
    std::vector<int> freq;
    std::vector<cplx> cx, cy;
  };
  auto series = std::make_shared<Series>();
  const int half = static_cast<int>(m / 2);
  for (int n = -half; n <= half; ++n) {
    cplx sx{0.0, 0.0}, sy{0.0, 0.0};
    for (std::size_t k = 0; k < m; ++k) {
      const double arg = -kTwoPi * n * static_cast<double>(k) / static_cast<double>(m);
      const cplx e{std::cos(arg), std::sin(arg)};
      sx += samples[k][0] * e;
      sy += samples[k][1] * e;
    }
    double w = 1.0 / static_cast<double>(m);
    if (m % 2 == 0 && std::abs(n) == half) w *= 0.5;
    series->freq.push_back(n);
    series->cx.push_back(sx * w);
    series->cy.push_back(sy * w);
  }

  ParametricCurve c;
  c.position = [series](double t) {
    double x = 0.0, y = 0.0;
    for (std::size_t j = 0; j < series->freq.size(); ++j) {
      const double arg = kTwoPi * series->freq[j] * t;
      const cplx e{std::cos(arg), std::sin(arg)};
      x += (series->cx[j] * e).real();
      y += (series->cy[j] * e).real();
    }
    return Vec2{x, y};
  };
  c.velocity = [series](double t) {
    double x = 0.0, y = 0.0;
    for (std::size_t j = 0; j < series->freq.size(); ++j) {
      const double w = kTwoPi * series->freq[j];
      const double arg = w * t;
      const cplx e{-w * std::sin(arg), w * std::cos(arg)};
      x += (series->cx[j] * e).real();
      y += (series->cy[j] * e).real();
    }
    return Vec2{x, y};
  };
  c.kind = CurveKind::SampledPeriodic;
  return c;
}

// ---------------------------------------------------------------------------
// Patches

Vec2 BoundaryPatch::node_position(std::size_t i) const {
  return rotation().apply({x1_nodes.at(i), gamma.at(i)});
}

PatchAudit audit_patch(const BoundaryPatch& patch, double max_slope) {
  PatchAudit audit;
  auto fail = [&audit](std::string msg) {
    audit.ok = false;
    audit.violations.push_back(std::move(msg));
  };

  const std::size_t n = patch.x1_nodes.size();
  if (n == 0) fail("patch has no nodes");
  if (patch.gamma.size() != n || patch.gamma_prime.size() != n || patch.mu.size() != n)
    fail("patch arrays differ in length");
  if (!(patch.h > 0.0) || !std::isfinite(patch.h)) fail("grid spacing h must be positive");
  if (!std::isfinite(patch.frame_angle)) fail("frame angle is not finite");
  if (!audit.ok) return audit;

  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(patch.x1_nodes[i]) || !std::isfinite(patch.gamma[i]) ||
        !std::isfinite(patch.gamma_prime[i]) || !std::isfinite(patch.mu[i])) {
      fail("non-finite value at node " + std::to_string(i));
      continue;
    }
    if (!(patch.mu[i] > 0.0)) fail("mu <= 0 at node " + std::to_string(i));
    audit.max_abs_slope = std::max(audit.max_abs_slope, std::abs(patch.gamma_prime[i]));
    if (std::abs(patch.gamma_prime[i]) > max_slope + 1e-10)
      fail("slope bound exceeded at node " + std::to_string(i));
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dx = patch.x1_nodes[i + 1] - patch.x1_nodes[i];
    // Representation error of the node coordinates themselves is admitted on
    // top of the relative spacing tolerance.
    const double scale = std::max(std::abs(patch.x1_nodes[i]), std::abs(patch.x1_nodes[i + 1]));
    if (std::abs(dx - patch.h) > 1e-14 * std::abs(patch.h) + 4.0 * kEps * scale) {
      fail("non-uniform grid between nodes " + std::to_string(i) + " and " +
           std::to_string(i + 1));
      break;
    }
  }
  return audit;
}

void validate_patch(const BoundaryPatch& patch, double max_slope) {
  const PatchAudit audit = audit_patch(patch, max_slope);
  if (audit.ok) return;
  std::ostringstream msg;
  msg << "invalid boundary patch:";
  for (const auto& v : audit.violations) msg << ' ' << v << ';';
  throw std::invalid_argument(msg.str());
}

double theta(double gamma_prime) { return std::sqrt(1.0 + gamma_prime * gamma_prime); }

Vec2 tangent_at(double gamma_prime) {
  const double th = theta(gamma_prime);
  return {1.0 / th, gamma_prime / th};
}

Vec2 normal_at(double gamma_prime, Orientation orientation) {
  const double th = theta(gamma_prime);
  const double sign = orientation == Orientation::DomainBelow ? 1.0 : -1.0;
  return {-sign * gamma_prime / th, sign / th};
}

std::vector<Vec2> rotate_vector_trace(std::span<const Vec2> v, const FrameRotation& rot) {
  std::vector<Vec2> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(rot.apply(x));
  return out;
}

BoundaryPatch make_graph_patch(const std::function<double(double)>& f,
                               const std::function<double(double)>& df, double x_begin,
                               double x_end, std::size_t nodes) {
  if (nodes < 2) throw std::invalid_argument("graph patch needs at least 2 nodes");
  if (!(x_end > x_begin)) throw std::invalid_argument("graph interval must be increasing");
  BoundaryPatch p;
  p.h = (x_end - x_begin) / static_cast<double>(nodes - 1);
  p.x1_nodes.resize(nodes);
  p.gamma.resize(nodes);
  p.gamma_prime.resize(nodes);
  p.mu.assign(nodes, 1.0);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double x = x_begin + static_cast<double>(i) * p.h;
    p.x1_nodes[i] = x;
    p.gamma[i] = f(x);
    p.gamma_prime[i] = df(x);
  }
  return p;
}

BoundaryPatch slice_patch(const BoundaryPatch& patch, std::size_t first, std::size_t count) {
  if (first + count > patch.size()) throw std::out_of_range("patch slice out of range");
  auto cut = [first, count](const std::vector<double>& v) {
    return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(first),
                               v.begin() + static_cast<std::ptrdiff_t>(first + count));
  };
  BoundaryPatch out;
  out.frame_angle = patch.frame_angle;
  out.h = patch.h;
  out.orientation = patch.orientation;
  out.x1_nodes = cut(patch.x1_nodes);
  out.gamma = cut(patch.gamma);
  out.gamma_prime = cut(patch.gamma_prime);
  out.mu = cut(patch.mu);
  return out;
}

// ---------------------------------------------------------------------------
// Partition

namespace {

// Dense tabulation of a curve: parameters, cumulative arc length, and
// unwrapped tangent direction.
struct DenseTable {
  std::vector<double> t;
  std::vector<double> arc;
  std::vector<double> angle;
  std::vector<double> abs_turning;
  double length = 0.0;
  double turning = 0.0;
  bool closed = true;

  double arc_at(double tt) const {
    double shift = 0.0;
    if (closed) {
      const double k = std::floor(tt);
      shift = k * length;
      tt -= k;
    }
    tt = std::clamp(tt, t.front(), t.back());
    auto it = std::upper_bound(t.begin(), t.end(), tt);
    std::size_t j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - t.begin(), 1)) - 1;
    j = std::min(j, t.size() - 2);
    const double w = (tt - t[j]) / (t[j + 1] - t[j]);
    return shift + arc[j] + w * (arc[j + 1] - arc[j]);
  }

  double param_at_arc(double s) const {
    double shift = 0.0;
    if (closed) {
      const double k = std::floor(s / length);
      shift = k;
      s -= k * length;
    }
    s = std::clamp(s, arc.front(), arc.back());
    auto it = std::upper_bound(arc.begin(), arc.end(), s);
    std::size_t j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - arc.begin(), 1)) - 1;
    j = std::min(j, arc.size() - 2);
    const double w = (s - arc[j]) / (arc[j + 1] - arc[j]);
    return shift + t[j] + w * (t[j + 1] - t[j]);
  }
};

DenseTable tabulate(const ParametricCurve& curve, const PartitionOptions& opt) {
  DenseTable tab;
  tab.closed = curve.closed();
  const std::size_t m = opt.audit_samples;
  tab.t.resize(m + 1);
  tab.arc.resize(m + 1);
  tab.angle.resize(m + 1);
  tab.abs_turning.resize(m + 1);

  std::vector<double> speed(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    const double tt = static_cast<double>(k) / static_cast<double>(m);
    tab.t[k] = tt;
    const Vec2 v = curve.velocity(tt);
    speed[k] = std::hypot(v[0], v[1]);
    if (!(speed[k] > 0.0) || !std::isfinite(speed[k]))
      throw GeometryError("curve is not regular at t = " + std::to_string(tt));
    const double a = direction(v);
    if (k == 0) {
      tab.angle[k] = a;
      tab.abs_turning[k] = 0.0;
      continue;
    }
    const double step = wrap_angle(a - tab.angle[k - 1]);
    if (std::abs(step) > opt.corner_tolerance)
      throw GeometryError("curve has a corner near t = " + std::to_string(tt));
    tab.angle[k] = tab.angle[k - 1] + step;
    tab.abs_turning[k] = tab.abs_turning[k - 1] + std::abs(step);
  }
  tab.arc[0] = 0.0;
  for (std::size_t k = 1; k <= m; ++k)
    tab.arc[k] = tab.arc[k - 1] + 0.5 * (speed[k] + speed[k - 1]) * (tab.t[k] - tab.t[k - 1]);
  tab.length = tab.arc[m];
  tab.turning = tab.angle[m] - tab.angle[0];

  if (tab.closed) {
    const Vec2 p0 = curve.position(0.0);
    const Vec2 p1 = curve.position(1.0);
    const double scale = std::max(1.0, std::hypot(p0[0], p0[1]));
    if (std::hypot(p1[0] - p0[0], p1[1] - p0[1]) > 1e-12 * scale)
      throw GeometryError("closed curve does not close up");
  }
  return tab;
}

// Parameter at which the blended turning/arc-length measure reaches `level`
// in [0, 1].
double core_boundary(const DenseTable& tab, double level) {
  const std::size_t m = tab.t.size() - 1;
  const double turn_total = tab.abs_turning[m];
  auto measure = [&](std::size_t k) {
    const double a = tab.arc[k] / tab.length;
    if (turn_total < 1e-12) return a;
    return 0.5 * a + 0.5 * tab.abs_turning[k] / turn_total;
  };
  if (level <= 0.0) return tab.t.front();
  if (level >= 1.0) return tab.t.back();
  std::size_t lo = 0, hi = m;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (measure(mid) < level ? lo : hi) = mid;
  }
  const double ml = measure(lo), mh = measure(hi);
  const double w = mh > ml ? (level - ml) / (mh - ml) : 0.0;
  return tab.t[lo] + w * (tab.t[hi] - tab.t[lo]);
}

double eval_t(const ParametricCurve& curve, double t) {
  return curve.closed() ? t - std::floor(t) : t;
}

struct PatchBuild {
  bool ok = false;
  BoundaryPatch patch;
};

PatchBuild build_patch(const ParametricCurve& curve, double a, double b, double frame_angle,
                       const PartitionOptions& opt) {
  PatchBuild result;
  const std::size_t n = opt.nodes_per_patch;
  const FrameRotation rot(frame_angle);
  auto local = [&](double t) { return rot.apply_inverse(curve.position(eval_t(curve, t))); };
  auto local_velocity = [&](double t) {
    return rot.apply_inverse(curve.velocity(eval_t(curve, t)));
  };

  const double xa = local(a)[0];
  const double xb = local(b)[0];
  if (!(xb > xa)) return result;

  BoundaryPatch& p = result.patch;
  p.frame_angle = frame_angle;
  const std::size_t interior_intervals = n - 2 * kMarginWidth - 1;
  p.h = (xb - xa) / static_cast<double>(interior_intervals);
  const double center = 0.5 * (xa + xb);
  const double mid_index = 0.5 * static_cast<double>(n - 1);

  const bool sampled = curve.kind == CurveKind::SampledPeriodic;
  // Sampled curves take gamma' from the 5-point stencil, which needs two
  // ghost nodes beyond each margin.
  const std::size_t ghost = sampled ? 2 : 0;
  const std::size_t total = n + 2 * ghost;
  std::vector<double> xs(total), ys(total), slopes(total), ts(total);

  const double dt_step = 2.0 * (b - a) / static_cast<double>(interior_intervals);
  double previous_t = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < total; ++j) {
    const double idx = static_cast<double>(j) - static_cast<double>(ghost);
    const double x = center + (idx - mid_index) * p.h;
    double lo = std::min(a, b), hi = std::max(a, b);
    for (int it = 0; local(lo)[0] > x; ++it) {
      if (it > 64) return result;
      lo -= dt_step;
    }
    for (int it = 0; local(hi)[0] < x; ++it) {
      if (it > 64) return result;
      hi += dt_step;
    }
    for (int it = 0; it < 200 && hi - lo > 2.0 * kEps * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      (local(mid)[0] < x ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    const Vec2 q = local(t);
    const Vec2 v = local_velocity(t);
    if (!(v[0] > 0.0)) return result;
    if (t < previous_t) return result;
    if (std::abs(q[0] - x) > 1e-10 * std::max(1.0, std::abs(x))) return result;
    previous_t = t;
    xs[j] = x;
    ys[j] = q[1];
    slopes[j] = v[1] / v[0];
    ts[j] = t;
  }

  p.x1_nodes.resize(n);
  p.gamma.resize(n);
  p.gamma_prime.resize(n);
  p.mu.assign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + ghost;
    p.x1_nodes[i] = xs[j];
    p.gamma[i] = ys[j];
    p.gamma_prime[i] =
        sampled ? (ys[j - 2] - 8.0 * ys[j - 1] + 8.0 * ys[j + 1] - ys[j + 2]) / (12.0 * p.h)
                : slopes[j];
  }

  for (double s : p.gamma_prime)
    if (std::abs(s) > opt.max_slope) return result;
  result.ok = true;
  return result;
}

}  // namespace

Partition partition_curve(const ParametricCurve& curve, const PartitionOptions& opt) {
  if (!(opt.max_slope > 0.0) || !std::isfinite(opt.max_slope))
    throw std::invalid_argument("max_slope must be positive");
  if (!(opt.overlap_fraction >= 0.0 && opt.overlap_fraction < 0.5))
    throw std::invalid_argument("overlap_fraction must lie in [0, 0.5)");
  if (opt.nodes_per_patch < 2 * kMarginWidth + 2)
    throw std::invalid_argument("nodes_per_patch must be at least 6");
  if (opt.audit_samples < 64) throw std::invalid_argument("audit_samples must be at least 64");
  if (!curve.position || !curve.velocity) throw std::invalid_argument("curve is not defined");

  const DenseTable tab = tabulate(curve, opt);
  const bool closed = curve.closed();
  const bool interior_left = closed ? tab.turning > 0.0 : curve.interior_on_left;
  const double cone = std::atan(opt.max_slope);
  const double f = opt.overlap_fraction;
  // Each side of a core is extended by this fraction of the core length.
  const double extension_ratio = f / (1.0 - 2.0 * f) + 0.01;

  std::size_t k_count = 1;
  if (closed) {
    const double need = std::abs(tab.turning) * (1.0 + 2.0 * extension_ratio) / (2.0 * cone);
    k_count = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(need)));
  }
  const std::size_t k_max = opt.audit_samples / 4;

  for (; k_count <= k_max;
       k_count = std::max(k_count + 1, static_cast<std::size_t>(std::ceil(k_count * 1.05)))) {
    Partition out;
    out.total_turning = tab.turning;
    out.total_length = tab.length;
    bool all_ok = true;
    for (std::size_t j = 0; j < k_count && all_ok; ++j) {
      const double c0 = core_boundary(tab, static_cast<double>(j) / k_count);
      const double c1 = core_boundary(tab, static_cast<double>(j + 1) / k_count);
      const double s0 = tab.arc_at(c0), s1 = tab.arc_at(c1);
      const double ext = extension_ratio * (s1 - s0);
      double a = tab.param_at_arc(s0 - ext);
      double b = tab.param_at_arc(s1 + ext);
      if (!closed) {
        a = j == 0 ? 0.0 : std::max(0.0, a);
        b = j + 1 == k_count ? 1.0 : std::min(1.0, b);
      }

      // Tangent directions over the patch, unwrapped relative to its start.
      constexpr int kProbe = 64;
      double ref = direction(curve.velocity(eval_t(curve, a)));
      double lo_angle = ref, hi_angle = ref, prev = ref;
      for (int q = 1; q <= kProbe; ++q) {
        const double t = a + (b - a) * q / kProbe;
        const double ang = prev + wrap_angle(direction(curve.velocity(eval_t(curve, t))) - prev);
        lo_angle = std::min(lo_angle, ang);
        hi_angle = std::max(hi_angle, ang);
        prev = ang;
      }
      if (hi_angle - lo_angle >= 2.0 * cone) {
        all_ok = false;
        break;
      }

      // Keep the global frame when the patch already is a bounded-slope graph.
      const double mid_angle = 0.5 * (lo_angle + hi_angle);
      const double turns = kTwoPi * std::round(mid_angle / kTwoPi);
      std::vector<double> candidates;
      if (lo_angle - turns > -cone && hi_angle - turns < cone) candidates.push_back(0.0);
      candidates.push_back(wrap_angle(mid_angle));

      PatchBuild built;
      for (double angle : candidates) {
        built = build_patch(curve, a, b, angle, opt);
        if (built.ok) break;
      }
      if (!built.ok) {
        all_ok = false;
        break;
      }
      built.patch.orientation = interior_left ? Orientation::DomainAbove : Orientation::DomainBelow;
      out.patches.push_back(std::move(built.patch));
      out.spans.push_back({a, b, tab.arc_at(b) - tab.arc_at(a)});
    }
    if (all_ok) return out;
  }
  throw GeometryError("could not partition curve within the slope bound");
}

}  // namespace cauchy
