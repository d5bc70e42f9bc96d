#pragma once

// Run configuration, the verification suites behind `verify`, and the file
// writers behind `construct` and `export-mesh`.

#include "bvhomeo/core_types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace bvhomeo {

enum class ReportFormat { json, csv };

struct RunConfig {
  int max_level = 6;
  double quad_tol = 1e-4;
  int grid_n = 512;
  NumericMode mode = NumericMode::floating;
  std::filesystem::path output_dir = ".";
  ReportFormat report_format = ReportFormat::json;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// Reads a JSON object or flat key=value lines ('#' starts a comment).
RunConfig load_config(const std::filesystem::path& path);
/// Same from text already in memory.
RunConfig parse_config(const std::string& text);

NumericMode parse_mode(const std::string& s);
ReportFormat parse_format(const std::string& s);

struct CheckRow {
  std::string id;
  std::string ref;  // the identity or bound being checked
  double lhs = 0;
  double rhs = 0;
  double residual = 0;  // |lhs - rhs| for identities, signed margin lhs - rhs for bounds
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

struct Report {
  std::string target;
  int level = 0;
  std::vector<CheckRow> rows;
  bool all_pass() const;
};

/// Levels above this are refused by construct (4^k cells are listed).
inline constexpr int kMaxConstructLevel = 8;

struct ConstructOutput {
  std::filesystem::path cells;
  std::filesystem::path sequences;
  std::size_t cell_count = 0;
};

/// Writes cells.json and sequences.json into cfg.output_dir.
ConstructOutput cmd_construct(const RunConfig& cfg, int level);

const std::vector<std::string>& verify_targets();

/// Runs one suite ("all" runs every suite); tol <= 0 keeps the per-check defaults.
Report run_verify(const RunConfig& cfg, const std::string& target, int level, double tol = 0);

/// Runs the suite and writes verify_<target>.json or .csv; returns the path.
std::filesystem::path cmd_verify(const RunConfig& cfg, const std::string& target, int level, double tol,
                                 Report* out = nullptr);

std::string report_json(const Report& r);
std::string report_csv(const Report& r);

struct MeshOutput {
  std::filesystem::path svg;
  std::filesystem::path csv;
  std::size_t polylines_per_layer = 0;
};

/// n x n reference grid on Q_0 and its image under f_level, plus the level
/// cells as an overlay. Output depends only on (level, n).
MeshOutput cmd_export_mesh(const RunConfig& cfg, int level, int n);

std::string mesh_svg(int level, int n);
std::string mesh_csv(int level, int n);

}  // namespace bvhomeo
