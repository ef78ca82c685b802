#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace cauchy::cli;

  CLI::App app{"Convert 2D incompressible boundary data between (u, d_nu u, p) and (u, sigma nu)"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write exact boundary data of a catalog flow");
  generate->add_option("--flow", gen.flow, "Flow name")->required();
  generate->add_option("--pressure", gen.pressure, "Pressure field name")->capture_default_str();
  generate->add_option("--viscosity", gen.viscosity, "Viscosity field name")->capture_default_str();
  generate->add_option("--curve", gen.curve, "Curve spec")->capture_default_str();
  generate->add_option("--nodes", gen.nodes, "Nodes including margins")->capture_default_str();
  generate->add_option("-o,--out", gen.out, "Output JSON")->required();
  generate->add_option("--csv", gen.csv, "Also write a CSV export");

  ConvertArgs conv;
  auto* convert = app.add_subcommand("convert", "Convert between DN and stress formats");
  convert->add_option("--direction", conv.direction, "stress-to-dn or dn-to-stress")->required();
  convert->add_option("-i,--in", conv.in, "Input JSON")->required();
  convert->add_option("-o,--out", conv.out, "Output JSON")->required();
  convert->add_option("--residual-tol", conv.residual_tol,
                      "Consistency tolerance (default 10 h^4 times the data scale)");
  convert->add_option("--csv", conv.csv, "Also write a CSV export");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check patch invariants and data consistency");
  verify->add_option("-i,--in", ver.in, "Input JSON")->required();
  verify->add_option("--max-slope", ver.max_slope, "Slope bound")->capture_default_str();
  verify->add_option("--det-tol", ver.det_tol, "Determinant identity tolerance")
      ->capture_default_str();
  verify->add_option("--residual-tol", ver.residual_tol,
                     "Consistency tolerance (default 10 h^4 times the data scale)");

  PartitionArgs part;
  auto* partition = app.add_subcommand("partition", "Split a closed curve into graph patches");
  partition->add_option("--curve", part.curve, "Curve spec")->required();
  partition->add_option("--max-slope", part.max_slope, "Slope bound")->capture_default_str();
  partition->add_option("--overlap", part.overlap, "Overlap fraction")->capture_default_str();
  partition->add_option("--nodes", part.nodes, "Nodes per patch including margins")
      ->capture_default_str();
  partition->add_option("-o,--out", part.out, "Output JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  if (*generate) return run_generate(gen, std::cout, std::cerr);
  if (*convert) return run_convert(conv, std::cout, std::cerr);
  if (*verify) return run_verify(ver, std::cout, std::cerr);
  return run_partition(part, std::cout, std::cerr);
}
