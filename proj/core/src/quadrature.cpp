#include "bvhomeo/quadrature.hpp"

#include "bvhomeo/parallel.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bvhomeo {

namespace {

GaussRule make_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2 / ((1 - x * x) * dp * dp);
  }
  return rule;
}

struct Subtree {
  const Integrand& f;
  const Rect2d& domain;
  const QuadOptions& opts;
  const CellClassifier& classify;
  double domain_area;
  QuadResult acc;

  static std::array<Rect2d, 4> split(const Rect2d& c) {
    const Point2d m = c.center();
    return {Rect2d(c.lo, m), Rect2d({m.x1, c.lo.x2}, {c.hi.x1, m.x2}), Rect2d({c.lo.x1, m.x2}, {m.x1, c.hi.x2}),
            Rect2d(m, c.hi)};
  }

  double tol_for(const Rect2d& clip) const { return opts.abs_tol * clip.area() / domain_area; }

  void mixed_leaf_estimate(const Rect2d& clip, double& value, double& err) const {
    const int m = opts.mixed_samples;
    double sum = 0, lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        // Off-center offsets keep the samples away from dyadic seam lines.
        const Point2d p{clip.lo.x1 + clip.width() * (i + 0.5 + 0.0917) / m,
                        clip.lo.x2 + clip.height() * (j + 0.5 - 0.0731) / m};
        const double v = f(p);
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    value = clip.area() * sum / (m * m);
    err = clip.area() * (hi - lo) / m;
  }

  // Accepts the order-n Gauss value once it agrees with order n-1.
  void smooth(const Rect2d& cell, const Rect2d& clip, int depth) {
    ++acc.cells;
    const double hi = gauss_rect(f, clip, opts.order);
    const double lo = gauss_rect(f, clip, std::max(1, opts.order - 1));
    const double err = std::abs(hi - lo);
    const bool ok = err <= tol_for(clip);
    if ((ok && depth >= opts.min_smooth_depth) || depth >= opts.max_depth) {
      acc.value += hi;
      acc.error += err;
      if (!ok) acc.converged = false;
      return;
    }
    for (const auto& part : split(cell)) {
      Rect2d c;
      if (rect_intersect(part, domain, c) && c.area() > 0) smooth(part, c, depth + 1);
    }
  }

  void visit(const Rect2d& cell, int depth) {
    Rect2d clip;
    if (!rect_intersect(cell, domain, clip) || clip.area() <= 0) return;
    const CellKind kind = classify ? classify(clip) : CellKind::smooth;
    if (kind == CellKind::zero) return;
    if (kind == CellKind::smooth) {
      smooth(cell, clip, depth);
      return;
    }
    ++acc.cells;
    if (depth >= opts.max_mixed_depth) {
      double v = 0, e = 0;
      mixed_leaf_estimate(clip, v, e);
      acc.value += v;
      acc.error += e;
      ++acc.mixed_leaves;
      return;
    }
    for (const auto& c : split(cell)) visit(c, depth + 1);
  }
};

}  // namespace

const GaussRule& gauss_rule(int order) {
  if (order < 1 || order > 20) throw std::invalid_argument("gauss_rule: order must be in [1, 20]");
  static std::array<GaussRule, 21> rules;
  static std::once_flag flag;
  std::call_once(flag, [] {
    for (int n = 1; n <= 20; ++n) rules[static_cast<std::size_t>(n)] = make_rule(n);
  });
  return rules[static_cast<std::size_t>(order)];
}

double gauss_rect(const Integrand& f, const Rect2d& r, int order) {
  const auto& g = gauss_rule(order);
  const Point2d c = r.center();
  const double h1 = r.width() / 2, h2 = r.height() / 2;
  double sum = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    double row = 0;
    for (std::size_t j = 0; j < g.nodes.size(); ++j) row += g.weights[j] * f({c.x1 + h1 * g.nodes[i], c.x2 + h2 * g.nodes[j]});
    sum += g.weights[i] * row;
  }
  return sum * h1 * h2;
}

QuadResult integrate(const Integrand& f, const Rect2d& domain, const QuadOptions& opts,
                     const CellClassifier& classify) {
  const Rect2d box = unit_box();
  return integrate(f, domain, box.contains(domain) ? box : domain, opts, classify);
}

QuadResult integrate(const Integrand& f, const Rect2d& domain, const Rect2d& root, const QuadOptions& opts,
                     const CellClassifier& classify) {
  if (!root.contains(domain)) throw std::invalid_argument("integrate: root box must contain the domain");
  QuadResult total;
  if (domain.area() <= 0) return total;
  // Independent subtrees at a fixed depth, reduced in index order.
  const int top = std::max(0, opts.top_depth);
  const int side = 1 << top;
  std::vector<Rect2d> tops;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const double x0 = root.lo.x1 + root.width() * i / side, x1 = root.lo.x1 + root.width() * (i + 1) / side;
      const double y0 = root.lo.x2 + root.height() * j / side, y1 = root.lo.x2 + root.height() * (j + 1) / side;
      tops.emplace_back(Point2d{x0, y0}, Point2d{x1, y1});
    }
  }
  const auto parts = parallel_map<QuadResult>(tops.size(), [&](std::size_t i) {
    Subtree t{f, domain, opts, classify, domain.area(), {}};
    t.visit(tops[i], top);
    return t.acc;
  });
  for (const auto& p : parts) {
    total.value += p.value;
    total.error += p.error;
    total.converged = total.converged && p.converged;
    total.cells += p.cells;
    total.mixed_leaves += p.mixed_leaves;
  }
  total.converged = total.converged && total.error <= 2 * opts.abs_tol;
  return total;
}

namespace {

double gauss_1d(const std::function<double(double)>& f, double a, double b, int order) {
  const auto& g = gauss_rule(order);
  const double c = (a + b) / 2, h = (b - a) / 2;
  double s = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(c + h * g.nodes[i]);
  return s * h;
}

void adapt_1d(const std::function<double(double)>& f, double a, double b, double whole, double tol, int order,
              int depth, QuadResult& acc) {
  const double m = (a + b) / 2;
  const double left = gauss_1d(f, a, m, order), right = gauss_1d(f, m, b, order);
  const double err = std::abs(left + right - whole);
  ++acc.cells;
  if (err <= tol || depth <= 0) {
    acc.value += left + right;
    acc.error += err;
    if (err > tol) acc.converged = false;
    return;
  }
  adapt_1d(f, a, m, left, tol / 2, order, depth - 1, acc);
  adapt_1d(f, m, b, right, tol / 2, order, depth - 1, acc);
}

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b, double abs_tol, int order,
                        int max_depth) {
  QuadResult r;
  if (b <= a) return r;
  adapt_1d(f, a, b, gauss_1d(f, a, b, order), abs_tol, order, max_depth, r);
  return r;
}

}  // namespace bvhomeo
