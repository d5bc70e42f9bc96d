// Acceptance gate: twelve criteria with pinned tolerances, one line each.
//
//   acceptance            run everything
//   acceptance C3 C7      run a subset
//
// Exit status is nonzero iff a requested criterion fails.

#include "oracle.hpp"

#include "bvhomeo/cantor.hpp"
#include "bvhomeo/degree.hpp"
#include "bvhomeo/derivative.hpp"
#include "bvhomeo/graph_measure.hpp"
#include "bvhomeo/sampling.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

using namespace bvhomeo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome c1_tv_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  QuadOptions q;
  q.abs_tol = 1e-4;
  bool ok = true;
  double worst_total = 0, worst_shell_margin = -1e9, worst_q = 0;
  for (int k = 1; k <= 6; ++k) {
    const auto r = tv_total(k, q);
    ok = ok && r.converged && r.tv_total_fk <= 20 + 1e-3 && r.q_term <= 4;
    worst_total = std::max(worst_total, r.tv_total_fk);
    worst_q = std::max(worst_q, r.q_term);
    for (std::size_t j = 0; j < r.shell.size(); ++j) {
      ok = ok && r.shell[j] <= r.shell_bound[j] + 1e-3;
      worst_shell_margin = std::max(worst_shell_margin, r.shell[j] - r.shell_bound[j]);
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 60;
  return {ok, "max total " + fmt("%.4f", worst_total) + " <= 20, max shell - bound " + fmt("%.4f", worst_shell_margin) +
                  ", max q-term " + fmt("%.4f", worst_q) + " <= 4, " + fmt("%.3f", secs) + " s < 60 s"};
}

Outcome c2_exact_q_integral() {
  // Oracle: |Q_k| times the row-max norm of the constant gradient, in GMP.
  bool ok = true;
  for (int k = 1; k <= 8; ++k) {
    const oracle::Q a1 = oracle::a(k + 1), b1 = oracle::b(k + 1);
    const oracle::Q area = 4 * oracle::pow2(-2 * k) * a1 * b1;
    const oracle::Q ref = area * (a1 / b1);
    const Rational got = tv_region_q_exact(k);
    ok = ok && oracle::same(got, ref) && oracle::same(got, oracle::pow2(2 - 2 * k) * a1 * a1);
  }
  return {ok, "int_Qk |Dg_k| = 4^{1-k} a_{k+1}^2 exactly for k = 1..8"};
}

Outcome c3_involution() {
  double worst = 0;
  for (int k = 1; k <= 6; ++k) {
    Sampler s(300 + k);
    for (int i = 0; i < 10000; ++i) {
      const Point2d x = s.point(unit_box());
      worst = std::max(worst, sup_distance(f_level_eval(k, f_level_eval(k, x)), x));
    }
  }
  return {worst < 1e-10, "max |f_k(f_k(x)) - x| = " + fmt("%.3g", worst) + " < 1e-10 (1e4 points, k <= 6)"};
}

Outcome c4_seams() {
  std::size_t checked = 0, bad = 0;
  for (int k = 2; k <= 8; ++k) {
    Sampler s(400 + k);
    const auto codes = SignCode::all(k);
    for (int i = 0; i < 250; ++i) {
      const CellAddress c(codes[s.bits() % codes.size()], codes[s.bits() % codes.size()]);
      const auto P = cell_rects<Rational>(c).first;
      const Rational t(static_cast<long long>(s.bits() % 4097), 4096);
      const Point2q pts[] = {{P.lo.x1 + t * P.width(), P.lo.x2},
                             {P.lo.x1 + t * P.width(), P.hi.x2},
                             {P.lo.x1, P.lo.x2 + t * P.height()},
                             {P.hi.x1, P.lo.x2 + t * P.height()}};
      const Point2q& x = pts[s.bits() % 4];
      ++checked;
      if (f_level_eval(k, x) != f_level_eval(k - 1, x)) ++bad;
    }
  }
  return {bad == 0 && checked >= 1000,
          std::to_string(checked) + " rational cell-boundary points, " + std::to_string(bad) + " mismatches"};
}

Outcome c5_witness() {
  bool ok = true;
  double min_ratio_excess = 1e9;
  for (int k = 1; k <= 8; ++k) {
    const double z1 = code_point<double>(SignCode::constant(k, 1)).first;
    const auto v = vertical_variation(k, z1);
    ok = ok && v.variation >= 1 && v.length == std::ldexp(1.0, 2 - k) && v.variation / v.length >= std::ldexp(1.0, k - 3);
    min_ratio_excess = std::min(min_ratio_excess, (v.variation / v.length) / std::ldexp(1.0, k - 3));
  }
  return {ok, "V >= 1, L = 2^{2-k}, min (V/L) / 2^{k-3} = " + fmt("%.3f", min_ratio_excess) + " for k = 1..8"};
}

Outcome c6_orientation() {
  int f_pos = 0, F_pos = 0, samples = 0, f_deg = 0, F_deg = 0, rects = 0;
  for (int k = 1; k <= 6; ++k) {
    const PlanarMap f = level_map(k), F = level_map(k, Orientation::sense_preserving);
    Sampler s(600 + k);
    for (int i = 0; i < 10000; ++i) {
      const Point2d x = s.point(unit_box());
      try {
        const double j = f_grad(k, x).jac;
        ++samples;
        f_pos += j > 0;
        F_pos += F.jacobian(x) > 0;
      } catch (const SeamError&) {
      }
    }
    for (int i = 0; i < 50; ++i) {
      const Rect2d R = s.rect(unit_box(), 0.02, 1.0);
      const auto c = rectangle_curve(R);
      ++rects;
      f_deg += winding_degree(f, c, f(R.center())) == 1;
      F_deg += winding_degree(F, c, F(R.center())) == 1;
    }
  }
  const bool ok = f_pos == samples && f_deg == rects;
  return {ok, "f_k: J > 0 at " + std::to_string(f_pos) + "/" + std::to_string(samples) + ", degree +1 on " +
                  std::to_string(f_deg) + "/" + std::to_string(rects) +
                  " rectangles (the anti-diagonal transfer matrices have det -1, so f_k reverses orientation); "
                  "swap o f_k: J > 0 at " +
                  std::to_string(F_pos) + "/" + std::to_string(samples) + ", degree +1 on " + std::to_string(F_deg) +
                  "/" + std::to_string(rects)};
}

Outcome c7_degree_formula() {
  const auto cube = degree_formula_check(cube_map(), Rect2d({0, 0}, {1, 1}), TestFunction::bump({0.4, 0.5}, 0.25, 0.3));
  const auto sq = degree_formula_check(square_map(), unit_box(), TestFunction::bump({0.3, 0.25}, 0.15, 0.15));
  const auto id = degree_formula_check(identity_map(), Rect2d({-0.5, -0.5}, {0.5, 0.5}),
                                       TestFunction::bump({0.1, 0.0}, 0.3, 0.2));
  const double worst = std::max({cube.residual, sq.residual, id.residual});
  return {worst < 1e-3, "residuals cube " + fmt("%.2g", cube.residual) + ", z^2 " + fmt("%.2g", sq.residual) +
                            ", identity " + fmt("%.2g", id.residual) + " < 1e-3"};
}

Outcome c8_det_area() {
  double worst = 0;
  for (int k = 1; k <= 4; ++k) {
    const PlanarMap F = level_map(k, Orientation::sense_preserving);
    Sampler s(800 + k);
    for (int i = 0; i < 20; ++i) worst = std::max(worst, det_equals_area_check(F, s.rect(unit_box(), 0.1, 1.2)).residual);
  }
  return {worst < 1e-2, "max |int_E J - |F_k(E)|| = " + fmt("%.3g", worst) + " < 1e-2 (20 rectangles per k <= 4, F_k = swap o f_k)"};
}

Outcome c9_adjugate() {
  double worst = 0;
  for (int k = 1; k <= 4; ++k) {
    const PlanarMap F = level_map(k, Orientation::sense_preserving);
    Sampler s(900 + k);
    for (int i = 0; i < 10; ++i) worst = std::max(worst, inverse_gradient_check(F, s.rect(unit_box(), 0.1, 1.0)).max_residual());
  }
  return {worst < 1e-2, "max adjugate-entry residual " + fmt("%.3g", worst) + " < 1e-2 (10 rectangles per k <= 4, F_k)"};
}

Outcome c10_fundamental() {
  double worst = 1e9;
  for (int k : {2, 4, 6})
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j)
        for (int e = 3; e <= 6; ++e)
          worst = std::min(worst, fundamental_ratio(k, {-0.855 + 0.19 * i, -0.855 + 0.19 * j}, std::ldexp(1.0, -e)));
  return {worst >= 0.225, "min |mu|(window) / r^2 = " + fmt("%.4f", worst) + " >= 0.225 (10x10 centers, r = 2^-3..2^-6, k = 2,4,6)"};
}

Outcome c11_boundaryless() {
  const auto eta = TestFunction::bump({0.05, -0.1}, 0.7, 0.6);
  const auto phi = TestFunction::bump({-0.1, 0.08}, 0.65, 0.7);
  double worst = 0;
  for (int k = 1; k <= 3; ++k) {
    const PlanarMap F = level_map(k, Orientation::sense_preserving);
    for (FormSlot s : {FormSlot::dx1, FormSlot::dx2, FormSlot::dy1, FormSlot::dy2})
      worst = std::max(worst, std::abs(boundaryless_residual(F, eta, phi, s).residual));
  }
  return {worst < 1e-3, "max |residual| = " + fmt("%.3g", worst) + " < 1e-3 (4 slots, k <= 3, F_k)"};
}

Outcome c12_blowup() {
  const auto p = blowup_profile(6, SignCode::constant(6, 1), SignCode::constant(6, 1), 5);
  const auto a = p.kappa12(), b = p.kappa_up12();
  bool ok = a.size() == 5;
  std::string trail;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) ok = ok && a[i] <= a[i - 1] && b[i] <= b[i - 1];
    trail += (i ? ", " : "") + fmt("%.3f", a[i]) + "/" + fmt("%.3f", b[i]);
  }
  return {ok, "kappa12/kappa^12 over r = 2^-1..2^-5: " + trail};
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::map<std::string, Criterion> all{
      {"C1", {"TV bound", c1_tv_bound}},
      {"C2", {"exact Q-region integral", c2_exact_q_integral}},
      {"C3", {"involution", c3_involution}},
      {"C4", {"seam consistency", c4_seams}},
      {"C5", {"non-Sobolev witness", c5_witness}},
      {"C6", {"Jacobian positivity and degree +1 of f_k", c6_orientation}},
      {"C7", {"degree formula", c7_degree_formula}},
      {"C8", {"Det = area", c8_det_area}},
      {"C9", {"inverse-gradient identity", c9_adjugate}},
      {"C10", {"fundamental estimate", c10_fundamental}},
      {"C11", {"boundaryless residual", c11_boundaryless}},
      {"C12", {"blow-up trend", c12_blowup}},
  };
  std::vector<std::string> wanted;
  for (int i = 1; i < argc; ++i) wanted.emplace_back(argv[i]);
  if (wanted.empty())
    for (int i = 1; i <= 12; ++i) wanted.push_back("C" + std::to_string(i));

  int failed = 0;
  for (const auto& id : wanted) {
    const auto it = all.find(id);
    if (it == all.end()) {
      std::fprintf(stderr, "unknown criterion %s\n", id.c_str());
      return 2;
    }
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = it->second.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%-4s %s  %-42s %s  [%.1fs]\n", id.c_str(), o.pass ? "PASS" : "FAIL", it->second.title,
                o.detail.c_str(), secs);
  }
  return failed ? 1 : 0;
}
