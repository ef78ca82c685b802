#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "cauchy/curve_spec.hpp"
#include "cauchy/dataset.hpp"
#include "cauchy/geometry.hpp"
#include "cauchy/manufactured.hpp"
#include "cauchy/transform.hpp"

namespace cauchy::cli {

namespace {

constexpr int kDigits = std::numeric_limits<double>::max_digits10;

int exit_code_for(const DatasetError& e) {
  return e.kind() == DatasetError::Kind::MissingData ? kUnknownName : kMalformed;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double data_scale(const Dataset& d) {
  double s = 1.0;
  for (const auto* a : {&d.u1, &d.u2, &d.dnu1, &d.dnu2, &d.p, &d.t1, &d.t2})
    s = std::max(s, max_abs(*a));
  return s;
}

// Default flagging threshold: the differentiation error floor 10 h^4 times
// the data scale.
double default_residual_tol(const Dataset& d) {
  const double h = d.patch.h;
  return 10.0 * h * h * h * h * data_scale(d);
}

}  // namespace

int run_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  const auto flow = find_flow(args.flow);
  const auto pressure = find_pressure(args.pressure);
  const auto viscosity = find_viscosity(args.viscosity);
  if (!flow || !pressure || !viscosity) {
    err << "error: unknown name:";
    if (!flow) err << " flow '" << args.flow << "'";
    if (!pressure) err << " pressure '" << args.pressure << "'";
    if (!viscosity) err << " viscosity '" << args.viscosity << "'";
    err << '\n';
    return kUnknownName;
  }
  if (args.nodes < 2 * kMarginWidth + 1) {
    err << "error: at least 5 nodes are required\n";
    return kMalformed;
  }

  BoundaryPatch patch;
  try {
    patch = make_spec_patch(parse_curve_spec(args.curve), args.nodes);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }

  const ManufacturedTraces traces = evaluate_traces(*flow, *pressure, *viscosity, patch);
  Dataset d = make_dataset(traces.patch, 0, &traces.dn, &traces.stress);
  d.provenance = Provenance{args.flow, args.pressure, args.viscosity, args.curve};
  try {
    write_dataset(args.out, d);
    if (args.csv) write_text(*args.csv, dataset_to_csv(d));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }
  out << "nodes " << d.patch.size() << '\n' << "data_kind " << to_string(d.kind) << '\n';
  return kOk;
}

int run_convert(const ConvertArgs& args, std::ostream& out, std::ostream& err) {
  if (args.direction != "stress-to-dn" && args.direction != "dn-to-stress") {
    err << "error: direction must be stress-to-dn or dn-to-stress\n";
    return kMalformed;
  }
  Dataset in;
  try {
    in = read_dataset(args.in);
  } catch (const DatasetError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  Dataset result;
  double residual = 0.0;
  try {
    if (args.direction == "stress-to-dn") {
      const DnConversion c = stress_to_dn(in.stress(), in.patch);
      result = make_dataset(in.patch, c.first_node, &c.data, nullptr);
      residual = c.max_solve_residual;
    } else {
      const StressConversion c = dn_to_stress(in.dn(), in.patch);
      result = make_dataset(in.patch, c.first_node, nullptr, &c.data);
      residual = c.max_residual;
    }
  } catch (const DatasetError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }
  result.provenance = in.provenance;

  try {
    write_dataset(args.out, result);
    if (args.csv) write_text(*args.csv, dataset_to_csv(result));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }

  const double tol = args.residual_tol.value_or(default_residual_tol(in));
  out << std::setprecision(kDigits);
  out << "nodes " << result.patch.size() << '\n';
  out << "max_residual " << residual << '\n';
  out << "residual_tol " << tol << '\n';
  if (!(residual <= tol)) {
    err << "error: consistency residual exceeds tolerance\n";
    return kResidualExceeded;
  }
  return kOk;
}

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  Dataset d;
  try {
    d = read_dataset(args.in);
  } catch (const DatasetError& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }
  out << std::setprecision(kDigits);

  const PatchAudit audit = audit_patch(d.patch, args.max_slope);
  out << "patch_audit " << (audit.ok ? "pass" : "fail") << '\n';
  out << "max_abs_slope " << audit.max_abs_slope << '\n';
  for (const auto& v : audit.violations) out << "  violation: " << v << '\n';

  double det_error = 0.0;
  bool det_ok = true;
  for (std::size_t i = 0; i < d.patch.size(); ++i) {
    const double gp = d.patch.gamma_prime[i];
    const double mu = d.patch.mu[i];
    if (!(mu > 0.0) || !std::isfinite(gp)) continue;
    const double s = 1.0 + gp * gp;
    const double expected = mu * s * s;
    det_error =
        std::max(det_error, std::abs(std::abs(determinant(assemble_system(gp, mu))) - expected) /
                                expected);
  }
  det_ok = det_error <= args.det_tol;
  out << "determinant_max_rel_error " << det_error << ' ' << (det_ok ? "pass" : "fail") << '\n';

  bool consistent = true;
  const double tol = args.residual_tol.value_or(default_residual_tol(d));
  if (audit.ok && d.patch.size() >= 2 * kMarginWidth + 1) {
    out << "residual_tol " << tol << '\n';
    if (d.has_dn()) {
      const StressConversion c = dn_to_stress(d.dn(), d.patch);
      const bool ok = c.max_residual <= tol;
      consistent = consistent && ok;
      out << "consistency_residual " << c.max_residual << ' ' << (ok ? "pass" : "fail") << '\n';
      if (d.has_stress()) {
        double cross = 0.0;
        for (std::size_t k = 0; k < c.data.size(); ++k) {
          const std::size_t i = c.first_node + k;
          cross = std::max({cross, std::abs(c.data.traction.c1[k] - d.t1[i]),
                            std::abs(c.data.traction.c2[k] - d.t2[i])});
        }
        const bool cross_ok = cross <= tol;
        consistent = consistent && cross_ok;
        out << "cross_format_error " << cross << ' ' << (cross_ok ? "pass" : "fail") << '\n';
      }
    }
  }

  if (!audit.ok || !det_ok) {
    err << "error: invariant violation\n";
    return kInvariantViolated;
  }
  if (!consistent) {
    err << "error: consistency check failed\n";
    return kResidualExceeded;
  }
  out << "verify pass\n";
  return kOk;
}

int run_partition(const PartitionArgs& args, std::ostream& out, std::ostream& err) {
  Partition part;
  try {
    const CurveSpec spec = parse_curve_spec(args.curve);
    PartitionOptions opt;
    opt.max_slope = args.max_slope;
    opt.overlap_fraction = args.overlap;
    opt.nodes_per_patch = args.nodes;
    part = partition_curve(make_curve(spec), opt);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }

  double max_slope = 0.0;
  nlohmann::json patches = nlohmann::json::array();
  for (const auto& p : part.patches) {
    for (double s : p.gamma_prime) max_slope = std::max(max_slope, std::abs(s));
    patches.push_back(patch_to_json(p));
  }
  const nlohmann::json doc = {{"format_version", kFormatVersion},
                              {"curve", args.curve},
                              {"max_slope", args.max_slope},
                              {"overlap_fraction", args.overlap},
                              {"patches", patches}};
  try {
    write_text(args.out, doc.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }
  out << std::setprecision(kDigits);
  out << "patches " << part.patches.size() << '\n';
  out << "max_abs_slope " << max_slope << '\n';
  return kOk;
}

}  // namespace cauchy::cli
