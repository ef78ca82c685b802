#pragma once

// On-disk boundary data: one patch plus DN and/or stress arrays, stored as
// JSON. Doubles are written in shortest round-trip form, so reading back a
// written file reproduces every array bit for bit.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cauchy/geometry.hpp"
#include "cauchy/transform.hpp"

namespace cauchy {

inline constexpr int kFormatVersion = 1;

enum class DataKind { Dn, Stress, Both };

std::string to_string(DataKind kind);
DataKind data_kind_from_string(const std::string& text);

struct Provenance {
  std::string flow;
  std::string pressure;
  std::string viscosity;
  std::string curve;
};

struct Dataset {
  int format_version = kFormatVersion;
  BoundaryPatch patch;
  DataKind kind = DataKind::Both;
  std::vector<double> u1, u2;
  std::vector<double> dnu1, dnu2, p;
  std::vector<double> t1, t2;
  std::optional<Provenance> provenance;

  bool has_dn() const { return kind != DataKind::Stress; }
  bool has_stress() const { return kind != DataKind::Dn; }

  /// Throw DatasetError(MissingData) when the arrays are absent.
  CauchyDN dn() const;
  CauchyStress stress() const;
};

class DatasetError : public std::runtime_error {
 public:
  enum class Kind { Malformed, MissingData };
  DatasetError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Builds a dataset from conversion output living on nodes
/// [first, first + n) of `patch`.
Dataset make_dataset(const BoundaryPatch& patch, std::size_t first, const CauchyDN* dn,
                     const CauchyStress* stress);

nlohmann::json patch_to_json(const BoundaryPatch& patch);
BoundaryPatch patch_from_json(const nlohmann::json& j);

nlohmann::json dataset_to_json(const Dataset& d);
/// Throws DatasetError(Malformed) on schema violations.
Dataset dataset_from_json(const nlohmann::json& j);

void write_dataset(const std::filesystem::path& path, const Dataset& d);
Dataset read_dataset(const std::filesystem::path& path);

/// Flat export with columns x1, gamma, gamma_prime, mu, u1, u2, dnu1, dnu2,
/// p, t1, t2. Absent columns are left empty.
std::string dataset_to_csv(const Dataset& d);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace cauchy
