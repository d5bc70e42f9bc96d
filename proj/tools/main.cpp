// bvhomeo: construct cells, run verification suites, export deformed meshes.
//
// Exit status: 0 when everything requested passed, 1 when some check failed,
// 2 for usage or configuration errors, 3 for I/O failures.

#include "bvhomeo/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace {

struct Globals {
  std::string config;
  std::string mode;
  std::string out;
  std::string format;
};

bvhomeo::RunConfig resolve(const Globals& g) {
  bvhomeo::RunConfig cfg = g.config.empty() ? bvhomeo::RunConfig{} : bvhomeo::load_config(g.config);
  if (!g.mode.empty()) cfg.mode = bvhomeo::parse_mode(g.mode);
  if (!g.out.empty()) cfg.output_dir = g.out;
  if (!g.format.empty()) cfg.report_format = bvhomeo::parse_format(g.format);
  cfg.validate();
  return cfg;
}

void print_report(const bvhomeo::Report& r) {
  for (const auto& c : r.rows) {
    std::printf("%-4s %-40s lhs=%-14.8g rhs=%-14.8g res=%-11.3g tol=%.3g", c.pass ? "ok" : "FAIL", c.id.c_str(), c.lhs,
                c.rhs, c.residual, c.tolerance);
    if (!c.note.empty()) std::printf("  (%s)", c.note.c_str());
    std::printf("\n");
  }
  std::size_t failed = 0;
  for (const auto& c : r.rows) failed += !c.pass;
  std::printf("%s: %zu checks, %zu failed\n", r.target.c_str(), r.rows.size(), failed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cantor-cell BV homeomorphism: construction, verification and mesh export"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Globals g;
  app.add_option("--config", g.config, "config file (JSON or key=value)");
  app.add_option("--mode", g.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--out", g.out, "output directory");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}));

  int level = 0;
  auto* construct = app.add_subcommand("construct", "write cells.json and sequences.json");
  construct->add_option("--level", level, "construction level")->required();

  std::string target;
  std::optional<int> vlevel;
  double tol = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite and write its report");
  verify->add_option("target", target, "suite name")
      ->required()
      ->check(CLI::IsMember(bvhomeo::verify_targets()));
  verify->add_option("--level", vlevel, "highest level to check (default: max_level)");
  verify->add_option("--tol", tol, "override the default tolerance of residual checks");

  int n = 0;
  auto* mesh = app.add_subcommand("export-mesh", "write an SVG and CSV of a deformed n x n grid");
  mesh->add_option("--level", level, "construction level")->required();
  mesh->add_option("--n", n, "grid cells per side, at most 1024")->required()->check(CLI::Range(1, 1024));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto cfg = resolve(g);
    if (*construct) {
      const auto out = bvhomeo::cmd_construct(cfg, level);
      std::printf("%zu cells -> %s\nsequences -> %s\n", out.cell_count, out.cells.string().c_str(),
                  out.sequences.string().c_str());
      return 0;
    }
    if (*verify) {
      bvhomeo::Report rep;
      const auto path = bvhomeo::cmd_verify(cfg, target, vlevel.value_or(cfg.max_level), tol, &rep);
      print_report(rep);
      std::printf("report -> %s\n", path.string().c_str());
      return rep.all_pass() ? 0 : 1;
    }
    const auto out = bvhomeo::cmd_export_mesh(cfg, level, n);
    std::printf("%zu polylines per layer\nsvg -> %s\ncsv -> %s\n", out.polylines_per_layer, out.svg.string().c_str(),
                out.csv.string().c_str());
    return 0;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
