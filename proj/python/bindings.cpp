#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cauchy/curve_spec.hpp"
#include "cauchy/dataset.hpp"
#include "cauchy/geometry.hpp"
#include "cauchy/manufactured.hpp"
#include "cauchy/trace_calculus.hpp"
#include "cauchy/transform.hpp"

namespace py = pybind11;
using namespace cauchy;

namespace {

using Array = std::vector<double>;

VectorTrace vector_trace(const Array& c1, const Array& c2, double h) {
  return VectorTrace{ScalarTrace{c1, h}, ScalarTrace{c2, h}};
}

std::optional<VectorTrace> optional_tangential(const std::optional<Array>& g,
                                               const std::optional<Array>& hp, double h) {
  if (g.has_value() != hp.has_value())
    throw std::invalid_argument("pass both tangential derivatives or neither");
  if (!g) return std::nullopt;
  return vector_trace(*g, *hp, h);
}

BoundaryPatch output_patch(const BoundaryPatch& patch, std::size_t first, std::size_t count) {
  return count == patch.size() ? patch : slice_patch(patch, first, count);
}

py::dict generate(const std::string& flow, const std::string& pressure,
                  const std::string& viscosity, const std::string& curve, std::size_t nodes) {
  const auto f = find_flow(flow);
  const auto p = find_pressure(pressure);
  const auto m = find_viscosity(viscosity);
  if (!f || !p || !m) throw py::key_error("unknown flow, pressure or viscosity name");
  const BoundaryPatch patch = make_spec_patch(parse_curve_spec(curve), nodes);
  const ManufacturedTraces t = evaluate_traces(*f, *p, *m, patch);
  py::dict d;
  d["patch"] = t.patch;
  d["u1"] = t.dn.u.c1.values;
  d["u2"] = t.dn.u.c2.values;
  d["dnu1"] = t.dn.dnu.c1.values;
  d["dnu2"] = t.dn.dnu.c2.values;
  d["p"] = t.dn.p.values;
  d["t1"] = t.stress.traction.c1.values;
  d["t2"] = t.stress.traction.c2.values;
  d["g_prime"] = t.tangential.c1.values;
  d["h_prime"] = t.tangential.c2.values;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Boundary data conversion for 2D incompressible flow";

  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<DatasetError>(m, "DatasetError", PyExc_ValueError);

  py::enum_<Orientation>(m, "Orientation")
      .value("DomainBelow", Orientation::DomainBelow)
      .value("DomainAbove", Orientation::DomainAbove);

  py::class_<BoundaryPatch>(m, "BoundaryPatch")
      .def(py::init<>())
      .def_readwrite("frame_angle", &BoundaryPatch::frame_angle)
      .def_readwrite("h", &BoundaryPatch::h)
      .def_readwrite("x1_nodes", &BoundaryPatch::x1_nodes)
      .def_readwrite("gamma", &BoundaryPatch::gamma)
      .def_readwrite("gamma_prime", &BoundaryPatch::gamma_prime)
      .def_readwrite("mu", &BoundaryPatch::mu)
      .def_readwrite("orientation", &BoundaryPatch::orientation)
      .def("__len__", &BoundaryPatch::size)
      .def("node_position", &BoundaryPatch::node_position, py::arg("i"))
      .def("__repr__", [](const BoundaryPatch& p) {
        return "<BoundaryPatch nodes=" + std::to_string(p.size()) +
               " frame_angle=" + std::to_string(p.frame_angle) + ">";
      });

  py::class_<PatchAudit>(m, "PatchAudit")
      .def_readonly("ok", &PatchAudit::ok)
      .def_readonly("max_abs_slope", &PatchAudit::max_abs_slope)
      .def_readonly("violations", &PatchAudit::violations);

  m.def("theta", &theta, py::arg("gamma_prime"));
  m.def("normal_at", &normal_at, py::arg("gamma_prime"),
        py::arg("orientation") = Orientation::DomainBelow);
  m.def("audit_patch", &audit_patch, py::arg("patch"), py::arg("max_slope") = 1.0);
  m.def("make_patch", [](const std::string& curve, std::size_t nodes) {
    return make_spec_patch(parse_curve_spec(curve), nodes);
  }, py::arg("curve"), py::arg("nodes") = 64);
  m.def("partition", [](const std::string& curve, double max_slope, double overlap,
                        std::size_t nodes) {
    PartitionOptions opt;
    opt.max_slope = max_slope;
    opt.overlap_fraction = overlap;
    opt.nodes_per_patch = nodes;
    return partition_curve(make_curve(parse_curve_spec(curve)), opt).patches;
  }, py::arg("curve"), py::arg("max_slope") = 1.0, py::arg("overlap") = 0.2,
        py::arg("nodes") = 64);

  m.def("assemble_system", &assemble_system, py::arg("gamma_prime"), py::arg("mu"));
  m.def("determinant", &determinant, py::arg("matrix"));
  m.def("solve_system", &solve_system, py::arg("gamma_prime"), py::arg("mu"), py::arg("rhs"));

  m.def("traction_from_gradient", [](double f1, double f2, double f3, double p, double gp,
                                     double mu, Orientation o) {
    return traction_from_gradient(GradientNode{f1, f2, f3, p}, gp, mu, o);
  }, py::arg("f1"), py::arg("f2"), py::arg("f3"), py::arg("p"), py::arg("gamma_prime"),
        py::arg("mu"), py::arg("orientation") = Orientation::DomainBelow);
  m.def("normal_derivative_from_gradient", [](double f1, double f2, double f3, double gp,
                                              Orientation o) {
    return normal_derivative_from_gradient(GradientNode{f1, f2, f3, 0.0}, gp, o);
  }, py::arg("f1"), py::arg("f2"), py::arg("f3"), py::arg("gamma_prime"),
        py::arg("orientation") = Orientation::DomainBelow);
  m.def("gradient_from_dn", [](double g, double hp, const Vec2& dnu, double gp, Orientation o) {
    const DnGradient r = gradient_from_dn(g, hp, dnu, gp, o);
    return py::make_tuple(std::array<double, 3>{r.f.f1, r.f.f2, r.f.f3}, r.residual);
  }, py::arg("g_prime"), py::arg("h_prime"), py::arg("dnu"), py::arg("gamma_prime"),
        py::arg("orientation") = Orientation::DomainBelow);

  m.def("tangential_derivative", [](const Array& values, double h) {
    return tangential_derivative(ScalarTrace{values, h}).values;
  }, py::arg("values"), py::arg("h"));

  m.def("flows", [] {
    std::vector<std::string> names;
    for (const auto& f : builtin_flows()) names.push_back(f.name);
    return names;
  });
  m.def("generate", &generate, py::arg("flow"), py::arg("pressure") = "zero",
        py::arg("viscosity") = "one", py::arg("curve") = "flat", py::arg("nodes") = 64);

  m.def("stress_to_dn", [](const BoundaryPatch& patch, const Array& u1, const Array& u2,
                           const Array& t1, const Array& t2, std::optional<Array> g_prime,
                           std::optional<Array> h_prime) {
    const CauchyStress s{vector_trace(u1, u2, patch.h), vector_trace(t1, t2, patch.h)};
    const DnConversion c = stress_to_dn(s, patch, optional_tangential(g_prime, h_prime, patch.h));
    py::dict d;
    d["patch"] = output_patch(patch, c.first_node, c.data.size());
    d["first_node"] = c.first_node;
    d["dnu1"] = c.data.dnu.c1.values;
    d["dnu2"] = c.data.dnu.c2.values;
    d["p"] = c.data.p.values;
    d["max_solve_residual"] = c.max_solve_residual;
    return d;
  }, py::arg("patch"), py::arg("u1"), py::arg("u2"), py::arg("t1"), py::arg("t2"),
        py::arg("g_prime") = py::none(), py::arg("h_prime") = py::none());

  m.def("dn_to_stress", [](const BoundaryPatch& patch, const Array& u1, const Array& u2,
                           const Array& dnu1, const Array& dnu2, const Array& p,
                           std::optional<Array> g_prime, std::optional<Array> h_prime) {
    const CauchyDN dn{vector_trace(u1, u2, patch.h), vector_trace(dnu1, dnu2, patch.h),
                      ScalarTrace{p, patch.h}};
    const StressConversion c =
        dn_to_stress(dn, patch, optional_tangential(g_prime, h_prime, patch.h));
    py::dict d;
    d["patch"] = output_patch(patch, c.first_node, c.data.size());
    d["first_node"] = c.first_node;
    d["t1"] = c.data.traction.c1.values;
    d["t2"] = c.data.traction.c2.values;
    d["max_residual"] = c.max_residual;
    return d;
  }, py::arg("patch"), py::arg("u1"), py::arg("u2"), py::arg("dnu1"), py::arg("dnu2"),
        py::arg("p"), py::arg("g_prime") = py::none(), py::arg("h_prime") = py::none());
}
