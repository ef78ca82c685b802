#include "cauchy/dataset.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace cauchy {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& why) {
  throw DatasetError(DatasetError::Kind::Malformed, "malformed dataset: " + why);
}

std::vector<double> number_array(const json& j, const char* key) {
  if (!j.contains(key)) malformed(std::string("missing field '") + key + "'");
  const json& a = j.at(key);
  if (!a.is_array()) malformed(std::string("field '") + key + "' is not an array");
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& x : a) {
    if (!x.is_number()) malformed(std::string("field '") + key + "' has a non-numeric entry");
    out.push_back(x.get<double>());
  }
  return out;
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    malformed(std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

VectorTrace vector_trace(const std::vector<double>& a, const std::vector<double>& b, double h) {
  return {{a, h}, {b, h}};
}

}  // namespace

std::string to_string(DataKind kind) {
  switch (kind) {
    case DataKind::Dn:
      return "dn";
    case DataKind::Stress:
      return "stress";
    case DataKind::Both:
      return "both";
  }
  return "both";
}

DataKind data_kind_from_string(const std::string& text) {
  if (text == "dn") return DataKind::Dn;
  if (text == "stress") return DataKind::Stress;
  if (text == "both") return DataKind::Both;
  malformed("unknown data_kind '" + text + "'");
}

CauchyDN Dataset::dn() const {
  if (!has_dn()) throw DatasetError(DatasetError::Kind::MissingData, "dataset has no DN arrays");
  return {vector_trace(u1, u2, patch.h), vector_trace(dnu1, dnu2, patch.h), {p, patch.h}};
}

CauchyStress Dataset::stress() const {
  if (!has_stress())
    throw DatasetError(DatasetError::Kind::MissingData, "dataset has no traction arrays");
  return {vector_trace(u1, u2, patch.h), vector_trace(t1, t2, patch.h)};
}

Dataset make_dataset(const BoundaryPatch& patch, std::size_t first, const CauchyDN* dn,
                     const CauchyStress* stress) {
  if (!dn && !stress) throw std::invalid_argument("dataset needs DN or stress data");
  const std::size_t n = dn ? dn->size() : stress->size();
  Dataset d;
  d.patch = slice_patch(patch, first, n);
  d.kind = dn && stress ? DataKind::Both : (dn ? DataKind::Dn : DataKind::Stress);
  const VectorTrace& u = dn ? dn->u : stress->u;
  d.u1 = u.c1.values;
  d.u2 = u.c2.values;
  if (dn) {
    d.dnu1 = dn->dnu.c1.values;
    d.dnu2 = dn->dnu.c2.values;
    d.p = dn->p.values;
  }
  if (stress) {
    d.t1 = stress->traction.c1.values;
    d.t2 = stress->traction.c2.values;
  }
  return d;
}

json patch_to_json(const BoundaryPatch& patch) {
  return json{{"frame_angle", patch.frame_angle}, {"h", patch.h},
              {"x1_nodes", patch.x1_nodes},       {"gamma", patch.gamma},
              {"gamma_prime", patch.gamma_prime}, {"mu", patch.mu},
              {"orientation", to_string(patch.orientation)}};
}

BoundaryPatch patch_from_json(const json& j) {
  if (!j.is_object()) malformed("patch is not an object");
  BoundaryPatch p;
  p.frame_angle = number(j, "frame_angle");
  p.h = number(j, "h");
  p.x1_nodes = number_array(j, "x1_nodes");
  p.gamma = number_array(j, "gamma");
  p.gamma_prime = number_array(j, "gamma_prime");
  p.mu = number_array(j, "mu");
  if (!j.contains("orientation") || !j.at("orientation").is_string())
    malformed("missing field 'orientation'");
  try {
    p.orientation = orientation_from_string(j.at("orientation").get<std::string>());
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
  const std::size_t n = p.x1_nodes.size();
  if (p.gamma.size() != n || p.gamma_prime.size() != n || p.mu.size() != n)
    malformed("patch arrays differ in length");
  return p;
}

json dataset_to_json(const Dataset& d) {
  json j;
  j["format_version"] = d.format_version;
  j["patch"] = patch_to_json(d.patch);
  j["data_kind"] = to_string(d.kind);
  j["u1"] = d.u1;
  j["u2"] = d.u2;
  if (d.has_dn()) {
    j["dnu1"] = d.dnu1;
    j["dnu2"] = d.dnu2;
    j["p"] = d.p;
  }
  if (d.has_stress()) {
    j["t1"] = d.t1;
    j["t2"] = d.t2;
  }
  if (d.provenance) {
    j["provenance"] = {{"flow", d.provenance->flow},
                       {"pressure", d.provenance->pressure},
                       {"viscosity", d.provenance->viscosity},
                       {"curve", d.provenance->curve}};
  }
  return j;
}

Dataset dataset_from_json(const json& j) {
  if (!j.is_object()) malformed("top level is not an object");
  Dataset d;
  if (!j.contains("format_version") || !j.at("format_version").is_number_integer())
    malformed("missing integer field 'format_version'");
  d.format_version = j.at("format_version").get<int>();
  if (d.format_version != kFormatVersion)
    malformed("unsupported format_version " + std::to_string(d.format_version));
  if (!j.contains("patch")) malformed("missing field 'patch'");
  d.patch = patch_from_json(j.at("patch"));
  if (!j.contains("data_kind") || !j.at("data_kind").is_string())
    malformed("missing field 'data_kind'");
  d.kind = data_kind_from_string(j.at("data_kind").get<std::string>());

  d.u1 = number_array(j, "u1");
  d.u2 = number_array(j, "u2");
  if (d.has_dn()) {
    d.dnu1 = number_array(j, "dnu1");
    d.dnu2 = number_array(j, "dnu2");
    d.p = number_array(j, "p");
  }
  if (d.has_stress()) {
    d.t1 = number_array(j, "t1");
    d.t2 = number_array(j, "t2");
  }
  const std::size_t n = d.patch.size();
  for (const auto* a : {&d.u1, &d.u2, &d.dnu1, &d.dnu2, &d.p, &d.t1, &d.t2})
    if (!a->empty() && a->size() != n) malformed("data arrays do not match the patch grid");
  if (n > 0 && d.u1.size() != n) malformed("data arrays do not match the patch grid");

  if (j.contains("provenance")) {
    const json& pj = j.at("provenance");
    if (!pj.is_object()) malformed("provenance is not an object");
    Provenance prov;
    prov.flow = pj.value("flow", "");
    prov.pressure = pj.value("pressure", "");
    prov.viscosity = pj.value("viscosity", "");
    prov.curve = pj.value("curve", "");
    d.provenance = prov;
  }
  return d;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_dataset(const std::filesystem::path& path, const Dataset& d) {
  write_text(path, dataset_to_json(d).dump(2) + "\n");
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    malformed(std::string("JSON parse error: ") + e.what());
  }
  return dataset_from_json(j);
}

std::string dataset_to_csv(const Dataset& d) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "x1,gamma,gamma_prime,mu,u1,u2,dnu1,dnu2,p,t1,t2\n";
  auto cell = [&out](const std::vector<double>& v, std::size_t i) {
    if (i < v.size()) out << v[i];
  };
  for (std::size_t i = 0; i < d.patch.size(); ++i) {
    out << d.patch.x1_nodes[i] << ',' << d.patch.gamma[i] << ',' << d.patch.gamma_prime[i] << ','
        << d.patch.mu[i];
    for (const auto* col : {&d.u1, &d.u2, &d.dnu1, &d.dnu2, &d.p, &d.t1, &d.t2}) {
      out << ',';
      cell(*col, i);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cauchy
