#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace cauchy::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUnknownName = 2,  // also: required arrays missing from the input
  kMalformed = 3,
  kResidualExceeded = 4,
  kInvariantViolated = 5,
};

struct GenerateArgs {
  std::string flow;
  std::string pressure = "zero";
  std::string viscosity = "one";
  std::string curve = "flat";
  std::size_t nodes = 64;
  std::string out;
  std::optional<std::string> csv;
};

struct ConvertArgs {
  std::string direction;
  std::string in;
  std::string out;
  std::optional<double> residual_tol;
  std::optional<std::string> csv;
};

struct VerifyArgs {
  std::string in;
  double max_slope = 1.0;
  double det_tol = 1e-12;
  std::optional<double> residual_tol;
};

struct PartitionArgs {
  std::string curve;
  double max_slope = 1.0;
  double overlap = 0.2;
  std::size_t nodes = 64;
  std::string out;
};

int run_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err);
int run_convert(const ConvertArgs& args, std::ostream& out, std::ostream& err);
int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int run_partition(const PartitionArgs& args, std::ostream& out, std::ostream& err);

}  // namespace cauchy::cli
