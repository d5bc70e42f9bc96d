#include "bvhomeo/report.hpp"

#include "bvhomeo/cantor.hpp"
#include "bvhomeo/degree.hpp"
#include "bvhomeo/derivative.hpp"
#include "bvhomeo/graph_measure.hpp"
#include "bvhomeo/sampling.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bvhomeo {

using ordered_json = nlohmann::ordered_json;

void RunConfig::validate() const {
  if (max_level < 1 || max_level > 12) throw std::invalid_argument("max_level must lie in [1, 12]");
  if (!(quad_tol > 0)) throw std::invalid_argument("quad_tol must be positive");
  if (grid_n < 1 || (grid_n & (grid_n - 1)) != 0) throw std::invalid_argument("grid_n must be a power of two");
}

NumericMode parse_mode(const std::string& s) {
  if (s == "exact") return NumericMode::exact;
  if (s == "float") return NumericMode::floating;
  throw std::invalid_argument("mode must be exact or float, got '" + s + "'");
}

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw std::invalid_argument("report_format must be json or csv, got '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "max_level") cfg.max_level = std::stoi(value);
    else if (key == "quad_tol") cfg.quad_tol = std::stod(value);
    else if (key == "grid_n") cfg.grid_n = std::stoi(value);
    else if (key == "mode") cfg.mode = parse_mode(value);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "report_format") cfg.report_format = parse_format(value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
  } catch (const std::logic_error& e) {
    if (std::string(e.what()).find(key) != std::string::npos) throw;
    throw std::invalid_argument("bad value for '" + key + "': " + value);
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    const auto j = nlohmann::json::parse(body);
    for (const auto& [key, value] : j.items())
      apply_setting(cfg, key, value.is_string() ? value.get<std::string>() : value.dump());
  } else {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      line = trim(line.substr(0, line.find('#')));
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const std::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

bool Report::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

ordered_json exact_value(const Rational& q) { return ordered_json{{"exact", to_string(q)}, {"value", to_double(q)}}; }

ordered_json rect_json(const Rect2q& r, bool exact) {
  if (exact)
    return ordered_json{{"lo", {to_string(r.lo.x1), to_string(r.lo.x2)}}, {"hi", {to_string(r.hi.x1), to_string(r.hi.x2)}}};
  const Rect2d d = to_double(r);
  return ordered_json{{"lo", {d.lo.x1, d.lo.x2}}, {"hi", {d.hi.x1, d.hi.x2}}};
}

}  // namespace

ConstructOutput cmd_construct(const RunConfig& cfg, int level) {
  cfg.validate();
  if (level < 1 || level > cfg.max_level)
    throw std::invalid_argument("level must lie in [1, max_level=" + std::to_string(cfg.max_level) + "]");
  if (level > kMaxConstructLevel)
    throw std::invalid_argument("construct lists 4^k cells; levels above " + std::to_string(kMaxConstructLevel) +
                                " are refused");
  const bool exact = cfg.mode == NumericMode::exact;
  ConstructOutput out;
  ordered_json cells = ordered_json::array();
  const auto codes = SignCode::all(level);
  for (const auto& a : codes)
    for (const auto& b : codes) {
      const CellAddress c(a, b);
      const auto [P, Q] = cell_rects<Rational>(c);
      cells.push_back(ordered_json{{"alpha", a.str()}, {"beta", b.str()}, {"P", rect_json(P, exact)},
                                   {"Q", rect_json(Q, exact)}});
    }
  out.cell_count = cells.size();
  ordered_json cj{{"level", level}, {"mode", exact ? "exact" : "float"}, {"count", out.cell_count}, {"cells", cells}};

  ordered_json seq = ordered_json::array();
  for (int k = 1; k <= std::max(level, cfg.max_level); ++k)
    seq.push_back(ordered_json{{"k", k},
                               {"a", exact_value(seq_a<Rational>(k))},
                               {"b", exact_value(seq_b<Rational>(k))},
                               {"S_measure", exact_value(s_measure<Rational>(k))}});
  ordered_json sj{{"level", level}, {"sequences", seq}};

  out.cells = cfg.output_dir / "cells.json";
  out.sequences = cfg.output_dir / "sequences.json";
  write_file(out.cells, cj.dump(1) + "\n");
  write_file(out.sequences, sj.dump(1) + "\n");
  return out;
}

const std::vector<std::string>& verify_targets() {
  static const std::vector<std::string> t{"involution", "tv",           "degree",  "det-area", "inverse",
                                          "fundamental", "boundaryless", "witness", "all"};
  return t;
}

namespace {

CheckRow residual_row(std::string id, std::string ref, double lhs, double rhs, double tol) {
  CheckRow r{std::move(id), std::move(ref), lhs, rhs, std::abs(lhs - rhs), tol, false, ""};
  r.pass = r.residual <= tol;
  return r;
}

CheckRow upper_row(std::string id, std::string ref, double value, double bound, double slack) {
  CheckRow r{std::move(id), std::move(ref), value, bound, value - bound, slack, false, ""};
  r.pass = value <= bound + slack;
  return r;
}

CheckRow lower_row(std::string id, std::string ref, double value, double bound, double slack) {
  CheckRow r{std::move(id), std::move(ref), value, bound, value - bound, slack, false, ""};
  r.pass = value >= bound - slack;
  return r;
}

std::string kname(const char* what, int k) { return std::string(what) + "_k" + std::to_string(k); }

double pick_tol(double tol, double dflt) { return tol > 0 ? tol : dflt; }

struct Suite {
  const RunConfig& cfg;
  int level;
  double tol;
  std::vector<CheckRow>& rows;

  int cap(int c) const { return std::min(level, c); }

  void involution() {
    for (int k = 1; k <= cap(6); ++k) {
      Sampler s(1000 + k);
      double worst = 0;
      if (cfg.mode == NumericMode::exact) {
        for (int i = 0; i < 500; ++i) {
          const Point2q x{to_rational(s.uniform(-1, 1)), to_rational(s.uniform(-1, 1))};
          const Point2q back = f_level_eval(k, f_level_eval(k, x));
          worst = std::max({worst, to_double(abs_value(Rational(back.x1 - x.x1))),
                            to_double(abs_value(Rational(back.x2 - x.x2)))});
        }
        rows.push_back(residual_row(kname("involution_exact", k), "f_k(f_k(x)) = x, rational points", worst, 0, 0));
      } else {
        for (int i = 0; i < 10000; ++i) {
          const Point2d x = s.point(unit_box());
          worst = std::max(worst, sup_distance(f_level_eval(k, f_level_eval(k, x)), x));
        }
        rows.push_back(residual_row(kname("involution", k), "max |f_k(f_k(x)) - x|", worst, 0, pick_tol(tol, 1e-10)));
      }
    }
  }

  void tv() {
    QuadOptions q;
    q.abs_tol = cfg.quad_tol;
    for (int k = 1; k <= std::min(level, cfg.max_level); ++k) {
      const auto rep = tv_total(k, q, cfg.max_level);
      const double slack = pick_tol(tol, 1e-3);
      rows.push_back(upper_row(kname("tv_total", k), "int_Q0 |Df_k| <= 20", rep.tv_total_fk, 20, slack));
      for (std::size_t j = 0; j < rep.shell.size(); ++j)
        rows.push_back(upper_row(kname("tv_shell", k) + "_j" + std::to_string(j + 1),
                                 "4^j (int_A |Dg_j| + int_B |Dg_j|) <= 2^{4-j}", rep.shell[j], rep.shell_bound[j],
                                 slack));
      rows.push_back(upper_row(kname("tv_q_term", k), "4^k int_Qk |Dg_k| <= 4", rep.q_term, 4, slack));
      const Rational exact = tv_region_q_exact(k);
      const auto a1 = seq_a<Rational>(k + 1);
      const Rational closed = pow2<Rational>(2 - 2 * k) * a1 * a1;
      auto row = residual_row(kname("tv_q_exact", k), "int_Qk |Dg_k| = 4^{1-k} a_{k+1}^2 (exact)", to_double(exact),
                              to_double(closed), 0);
      row.pass = exact == closed;
      row.note = to_string(exact);
      rows.push_back(row);
    }
  }

  void degree() {
    for (int k = 1; k <= cap(6); ++k) {
      const PlanarMap f = level_map(k), F = level_map(k, Orientation::sense_preserving);
      Sampler s(2000 + k);
      int bad_f = 0, bad_F = 0;
      for (int i = 0; i < 10; ++i) {
        const Rect2d R = s.rect(unit_box(), 0.05, 0.9);
        const auto c = rectangle_curve(R);
        if (winding_degree(f, c, f(R.center())) != -1) ++bad_f;
        if (winding_degree(F, c, F(R.center())) != 1) ++bad_F;
      }
      rows.push_back(residual_row(kname("degree_construction", k), "deg(f_k, R, f_k(center)) = -1 on 10 rectangles",
                                  bad_f, 0, 0));
      rows.push_back(residual_row(kname("degree_swapped", k), "deg(swap o f_k, R, .) = +1 on 10 rectangles", bad_F,
                                  0, 0));
      int neg = 0, total = 0;
      for (int i = 0; i < 1000; ++i) {
        const Point2d x = s.point(unit_box());
        try {
          ++total;
          if (f_grad(k, x).jac < 0) ++neg;
        } catch (const SeamError&) {
          --total;
        }
      }
      rows.push_back(residual_row(kname("jacobian_sign_construction", k), "J_{f_k} < 0 off seams (fraction)",
                                  static_cast<double>(neg) / total, 1, 0));
    }
    const double t = pick_tol(tol, 1e-3);
    const auto cube = degree_formula_check(cube_map(), Rect2d({0, 0}, {1, 1}), TestFunction::bump({0.4, 0.5}, 0.25, 0.3));
    rows.push_back(residual_row("degree_formula_cube", "int eta(f) J_f = int eta deg(f,U,.)", cube.lhs, cube.rhs, t));
    const auto sq = degree_formula_check(square_map(), unit_box(), TestFunction::bump({0.3, 0.25}, 0.15, 0.15));
    rows.push_back(residual_row("degree_formula_square", "int eta(f) J_f = int eta deg(f,U,.)", sq.lhs, sq.rhs, t));
    const auto id = degree_formula_check(identity_map(), Rect2d({-0.5, -0.5}, {0.5, 0.5}),
                                         TestFunction::bump({0.1, 0.0}, 0.3, 0.2));
    rows.push_back(residual_row("degree_formula_identity", "int eta(f) J_f = int eta deg(f,U,.)", id.lhs, id.rhs, t));
  }

  DegreeOptions degree_options() const {
    DegreeOptions o;
    o.grid_n = cfg.grid_n;
    return o;
  }

  void det_area() {
    for (int k = 1; k <= cap(4); ++k) {
      const PlanarMap F = level_map(k, Orientation::sense_preserving);
      Sampler s(3000 + k);
      for (int i = 0; i < 5; ++i) {
        const Rect2d E = s.rect(unit_box(), 0.1, 1.2);
        const auto r = det_equals_area_check(F, E, degree_options());
        rows.push_back(residual_row(kname("det_area", k) + "_" + std::to_string(i), "int_E J_F = |F(E)|", r.lhs,
                                    r.rhs, pick_tol(tol, 1e-2)));
      }
    }
  }

  void inverse() {
    static const char* names[] = {"11", "12", "21", "22"};
    for (int k = 1; k <= cap(4); ++k) {
      const PlanarMap F = level_map(k, Orientation::sense_preserving);
      Sampler s(4000 + k);
      for (int i = 0; i < 3; ++i) {
        const Rect2d U = s.rect(unit_box(), 0.1, 1.0);
        const auto r = inverse_gradient_check(F, U, degree_options());
        for (int e = 0; e < 4; ++e)
          rows.push_back(residual_row(kname("adjugate", k) + "_" + std::to_string(i) + "_" + names[e],
                                      "int_F(U) D(F^-1) = int_U adj DF", r.entries[e].lhs, r.entries[e].rhs,
                                      pick_tol(tol, 1e-2)));
      }
    }
  }

  void fundamental() {
    rows.push_back(residual_row("fundamental_identity", "identity: |mu|(window)/r^2 = 2 pi",
                                fundamental_ratio(identity_map(), {0.1, -0.2}, 0.25), 2 * std::numbers::pi,
                                pick_tol(tol, 0.05)));
    for (int k : {cap(2), cap(4)}) {
      double worst = INFINITY;
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          for (int e = 3; e <= 6; ++e) {
            const Point2d x0{-0.76 + 0.38 * i, -0.76 + 0.38 * j};
            worst = std::min(worst, fundamental_ratio(k, x0, pow2<double>(-e)));
          }
      rows.push_back(lower_row(kname("fundamental_min", k), "min |mu|(B(x,r) x B(f(x),r)) / r^2 >= 1/4 - 10%", worst,
                               0.225, 0));
    }
  }

  void boundaryless() {
    const auto eta = TestFunction::bump({0.05, -0.1}, 0.7, 0.6);
    const auto phi = TestFunction::bump({-0.1, 0.08}, 0.65, 0.7);
    QuadOptions q;
    q.abs_tol = cfg.quad_tol;
    for (int k = 1; k <= cap(3); ++k) {
      const PlanarMap F = level_map(k, Orientation::sense_preserving);
      for (FormSlot s : {FormSlot::dx1, FormSlot::dx2, FormSlot::dy1, FormSlot::dy2}) {
        const auto r = boundaryless_residual(F, eta, phi, s, q);
        rows.push_back(residual_row(kname("boundaryless", k) + "_" + slot_name(s),
                                    "<graph current, d(eta phi dz)> = 0", r.residual, 0, pick_tol(tol, 1e-3)));
      }
    }
  }

  void witness() {
    for (int k = 1; k <= cap(8); ++k) {
      const double z1 = code_point<double>(SignCode::constant(k, 1)).first;
      const auto v = vertical_variation(k, z1);
      rows.push_back(lower_row(kname("witness_V", k), "variation of f_k,1 along x2 >= 1", v.variation, 1, 0));
      rows.push_back(residual_row(kname("witness_L", k), "total length of Y_beta = 2^{2-k}", v.length,
                                  pow2<double>(2 - k), 1e-12));
      rows.push_back(lower_row(kname("witness_ratio", k), "V / L >= 2^{k-3}", v.variation / v.length,
                               pow2<double>(k - 3), 0));
    }
  }
};

}  // namespace

Report run_verify(const RunConfig& cfg, const std::string& target, int level, double tol) {
  cfg.validate();
  if (std::find(verify_targets().begin(), verify_targets().end(), target) == verify_targets().end())
    throw std::invalid_argument("unknown verify target '" + target + "'");
  if (level < 1 || level > cfg.max_level)
    throw std::invalid_argument("level must lie in [1, max_level=" + std::to_string(cfg.max_level) + "]");
  Report rep;
  rep.target = target;
  rep.level = level;
  Suite s{cfg, level, tol, rep.rows};
  const std::map<std::string, void (Suite::*)()> suites{
      {"involution", &Suite::involution}, {"tv", &Suite::tv},
      {"degree", &Suite::degree},         {"det-area", &Suite::det_area},
      {"inverse", &Suite::inverse},       {"fundamental", &Suite::fundamental},
      {"boundaryless", &Suite::boundaryless}, {"witness", &Suite::witness}};
  for (const auto& name : verify_targets()) {
    if (name == "all" || (target != "all" && name != target)) continue;
    try {
      (s.*suites.at(name))();
    } catch (const std::exception& e) {
      CheckRow r{name + "_error", "suite completed", 0, 0, 0, 0, false, e.what()};
      rep.rows.push_back(r);
    }
  }
  return rep;
}

std::string report_json(const Report& r) {
  ordered_json rows = ordered_json::array();
  for (const auto& c : r.rows) {
    ordered_json j{{"id", c.id},         {"ref", c.ref},   {"lhs", c.lhs}, {"rhs", c.rhs},
                   {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    rows.push_back(j);
  }
  return ordered_json{{"target", r.target}, {"level", r.level}, {"pass", r.all_pass()}, {"checks", rows}}.dump(1) + "\n";
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string report_csv(const Report& r) {
  std::string out = "id,ref,lhs,rhs,residual,tolerance,pass\n";
  for (const auto& c : r.rows)
    out += csv_field(c.id) + "," + csv_field(c.ref) + "," + num(c.lhs) + "," + num(c.rhs) + "," + num(c.residual) + "," + num(c.tolerance) +
           "," + (c.pass ? "true" : "false") + "\n";
  return out;
}

std::filesystem::path cmd_verify(const RunConfig& cfg, const std::string& target, int level, double tol, Report* out) {
  Report rep = run_verify(cfg, target, level, tol);
  const bool json = cfg.report_format == ReportFormat::json;
  const auto path = cfg.output_dir / ("verify_" + target + (json ? ".json" : ".csv"));
  write_file(path, json ? report_json(rep) : report_csv(rep));
  if (out) *out = std::move(rep);
  return path;
}

namespace {

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // Avoid "-0.000000" so equal geometry prints equally.
  if (std::string(buf) == "-0.000000") return "0.000000";
  return buf;
}

void check_mesh_args(int level, int n) {
  require_level(level);
  if (n < 1 || n > 1024) throw std::invalid_argument("export-mesh: n must lie in [1, 1024]");
}

}  // namespace

std::string mesh_svg(int level, int n) {
  check_mesh_args(level, n);
  constexpr int samples = 257;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"800\" height=\"800\">\n";
  out += "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"0.002\">\n";
  auto layer = [&](const char* id, const char* color, bool image) {
    out += std::string("<g id=\"") + id + "\" stroke=\"" + color + "\">\n";
    for (int dir = 0; dir < 2; ++dir)
      for (int i = 0; i <= n; ++i) {
        const double c = -1 + 2.0 * i / n;
        out += "<polyline points=\"";
        for (int s = 0; s < samples; ++s) {
          const double t = -1 + 2.0 * s / (samples - 1);
          Point2d p = dir == 0 ? Point2d{c, t} : Point2d{t, c};
          if (image) p = f_level_eval(level, p);
          if (s) out += ' ';
          out += fixed6(p.x1) + "," + fixed6(p.x2);
        }
        out += "\"/>\n";
      }
    out += "</g>\n";
  };
  layer("reference", "#999999", false);
  layer("image", "#1f4e9c", true);
  out += "<g id=\"cells\" stroke=\"#c0392b\" stroke-width=\"0.001\">\n";
  if (level <= 6) {
    const auto codes = SignCode::all(level);
    for (const auto& a : codes)
      for (const auto& b : codes) {
        const Rect2d P = cell_rects<double>(CellAddress(a, b)).first;
        out += "<rect data-alpha=\"" + a.str() + "\" data-beta=\"" + b.str() + "\" x=\"" + fixed6(P.lo.x1) +
               "\" y=\"" + fixed6(P.lo.x2) + "\" width=\"" + fixed6(P.width()) + "\" height=\"" +
               fixed6(P.height()) + "\"/>\n";
      }
  }
  out += "</g>\n</g>\n</svg>\n";
  return out;
}

std::string mesh_csv(int level, int n) {
  check_mesh_args(level, n);
  std::string out = "x1,x2,y1,y2\n";
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const Point2d x{-1 + 2.0 * i / n, -1 + 2.0 * j / n};
      const Point2d y = f_level_eval(level, x);
      out += num(x.x1) + "," + num(x.x2) + "," + num(y.x1) + "," + num(y.x2) + "\n";
    }
  return out;
}

MeshOutput cmd_export_mesh(const RunConfig& cfg, int level, int n) {
  cfg.validate();
  if (level > cfg.max_level)
    throw std::invalid_argument("level must lie in [1, max_level=" + std::to_string(cfg.max_level) + "]");
  MeshOutput m;
  const std::string stem = "mesh_k" + std::to_string(level) + "_n" + std::to_string(n);
  m.svg = cfg.output_dir / (stem + ".svg");
  m.csv = cfg.output_dir / (stem + ".csv");
  m.polylines_per_layer = 2 * static_cast<std::size_t>(n + 1);
  write_file(m.svg, mesh_svg(level, n));
  write_file(m.csv, mesh_csv(level, n));
  return m;
}

}  // namespace bvhomeo
