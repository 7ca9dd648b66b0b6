#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "tq/cli/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"topological quantization of gravitational fields"};
  app.require_subcommand(1, 1);
  tq::cli::Options o;
  if (const char* s = std::getenv("CQ_SEED")) o.seed = std::strtoull(s, nullptr, 10);

  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {{"connection", "spin connection from the coframe"},
                      {"curvature", "curvature 2-forms and Bianchi residual"},
                      {"invariants", "Ricci scalar, Kretschmann, field invariant, singular loci"},
                      {"verify", "Einstein (or Einstein-Maxwell) field equations"},
                      {"gauge", "apply a u(1) phase or an exp(angle T_phi) rotation"},
                      {"atlas", "patches, transition functions, cocycle check"},
                      {"quantize", "quantization conditions and Chern data"},
                      {"case", "full pipeline with golden comparison"}};
  std::string file, case_name, json, phase, angle, coordinate;
  bool all = false;
  for (const auto& c : cmds) {
    auto* sc = app.add_subcommand(c.name, c.help);
    sc->add_option("--file", file, "spacetime definition (.st)");
    sc->add_option("--case", case_name, "einstein-rosen | monopole | reissner-nordstrom | kerr-newman");
    sc->add_option("--json", json, "write a JSON report");
    sc->add_flag("--check-golden", o.check_golden, "compare against golden fixtures");
    sc->add_flag("--verbose", o.verbose, "add timestamps");
    sc->add_option("--golden-dir", o.golden_dir, "directory of golden fixtures");
    if (std::string(c.name) == "case") sc->add_flag("--all", all, "run every built-in case");
    if (std::string(c.name) == "gauge" || std::string(c.name) == "quantize") {
      sc->add_option("--phase", phase, "u(1) phase chi of exp(i*chi)");
    }
    if (std::string(c.name) == "gauge") sc->add_option("--angle", angle, "angle of exp(angle*T_phi)");
    if (std::string(c.name) == "quantize") sc->add_option("--coordinate", coordinate, "periodic coordinate");
    sc->callback([&, name = std::string(c.name)] { o.command = name; });
  }
  CLI11_PARSE(app, argc, argv);

  if (!file.empty()) o.file = file;
  if (!case_name.empty()) o.case_name = case_name;
  if (all) o.case_name = "all";
  if (!json.empty()) o.json_path = json;
  if (!phase.empty()) o.phase = phase;
  if (!angle.empty()) o.angle = angle;
  if (!coordinate.empty()) o.coordinate = coordinate;
  return tq::cli::run(o, std::cout, std::cerr);
}
