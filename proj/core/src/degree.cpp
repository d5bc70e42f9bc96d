#include "bvhomeo/degree.hpp"

#include "bvhomeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bvhomeo {

double BoundaryCurve::signed_area() const {
  double s = 0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    s += vertices[i].x1 * vertices[i + 1].x2 - vertices[i + 1].x1 * vertices[i].x2;
  return s / 2;
}

double BoundaryCurve::length() const {
  double s = 0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) s += euclid_distance(vertices[i], vertices[i + 1]);
  return s;
}

Rect2d BoundaryCurve::bounding_box() const {
  if (vertices.empty()) throw std::invalid_argument("BoundaryCurve: no vertices");
  Point2d lo = vertices.front(), hi = vertices.front();
  for (const auto& v : vertices) {
    lo = {std::min(lo.x1, v.x1), std::min(lo.x2, v.x2)};
    hi = {std::max(hi.x1, v.x1), std::max(hi.x2, v.x2)};
  }
  return {lo, hi};
}

void BoundaryCurve::validate(bool require_positive) const {
  if (vertices.size() < 4) throw std::invalid_argument("BoundaryCurve: need at least three distinct vertices");
  if (!(vertices.front() == vertices.back())) throw std::invalid_argument("BoundaryCurve: curve is not closed");
  if (require_positive && !(signed_area() > 0))
    throw std::invalid_argument("BoundaryCurve: curve is not positively oriented");
}

BoundaryCurve rectangle_curve(const Rect2d& r, int per_edge) {
  if (per_edge < 1) throw std::invalid_argument("rectangle_curve: per_edge must be >= 1");
  if (!(r.area() > 0)) throw std::invalid_argument("rectangle_curve: degenerate rectangle");
  const std::array<Point2d, 5> corners{r.lo, Point2d{r.hi.x1, r.lo.x2}, r.hi, Point2d{r.lo.x1, r.hi.x2}, r.lo};
  BoundaryCurve c;
  c.refinement = per_edge;
  for (int e = 0; e < 4; ++e)
    for (int i = 0; i < per_edge; ++i) {
      const double t = static_cast<double>(i) / per_edge;
      c.vertices.push_back(corners[e] + t * (corners[e + 1] - corners[e]));
    }
  c.vertices.push_back(r.lo);
  c.validate();
  return c;
}

BoundaryCurve circle_curve(const Point2d& center, double radius, int segments) {
  if (!(radius > 0) || segments < 3) throw std::invalid_argument("circle_curve: bad radius or segment count");
  BoundaryCurve c;
  c.refinement = segments;
  for (int i = 0; i < segments; ++i) {
    const double t = 2 * std::numbers::pi * i / segments;
    c.vertices.push_back({center.x1 + radius * std::cos(t), center.x2 + radius * std::sin(t)});
  }
  c.vertices.push_back(c.vertices.front());
  c.validate();
  return c;
}

BoundaryCurve polyline_curve(std::vector<Point2d> points) {
  BoundaryCurve c;
  c.vertices = std::move(points);
  if (!c.vertices.empty() && !(c.vertices.front() == c.vertices.back())) c.vertices.push_back(c.vertices.front());
  c.validate(false);
  return c;
}

namespace {

double angle_between(const Point2d& a, const Point2d& b) {
  return std::atan2(a.x1 * b.x2 - a.x2 * b.x1, a.x1 * b.x1 + a.x2 * b.x2);
}

double diameter(const Rect2d& r) { return std::hypot(r.width(), r.height()); }

}  // namespace

WindingResult winding_number(const PlanarMap& map, const BoundaryCurve& curve, const Point2d& y,
                             const WindingOptions& opts) {
  curve.validate(false);
  const double tol = opts.tolerance < 0 ? 1e-6 * diameter(curve.bounding_box()) : opts.tolerance;
  const double L = map.lipschitz;
  WindingResult res;
  res.min_distance = INFINITY;
  double total = 0;

  struct Piece {
    Point2d a, b, fa, fb;
    int depth;
  };
  auto offset = [&](const Point2d& x) {
    ++res.evaluations;
    const Point2d v = map(x) - y;
    const double d = std::hypot(v.x1, v.x2);
    res.min_distance = std::min(res.min_distance, d);
    if (d < tol)
      throw TooCloseToImage("winding_number: image point within " + std::to_string(d) + " of the target");
    return v;
  };

  std::vector<Piece> stack;
  Point2d f_first = offset(curve.vertices.front());
  Point2d f_prev = f_first;
  for (std::size_t e = 0; e + 1 < curve.vertices.size(); ++e) {
    const Point2d a = curve.vertices[e], b = curve.vertices[e + 1];
    const Point2d fb = e + 2 == curve.vertices.size() ? f_first : offset(b);
    stack.push_back({a, b, f_prev, fb, 0});
    while (!stack.empty()) {
      const Piece p = stack.back();
      stack.pop_back();
      const double da = std::hypot(p.fa.x1, p.fa.x2), db = std::hypot(p.fb.x1, p.fb.x2);
      const double step = angle_between(p.fa, p.fb);
      const bool ok = L > 0 ? L * euclid_distance(p.a, p.b) < std::max(da, db)
                            : std::abs(step) < std::numbers::pi / 2;
      if (ok) {
        total += step;
        continue;
      }
      if (p.depth >= opts.max_depth) throw NonConvergent("winding_number: refinement cap reached");
      const Point2d m = 0.5 * (p.a + p.b);
      const Point2d fm = offset(m);
      stack.push_back({m, p.b, fm, p.fb, p.depth + 1});
      stack.push_back({p.a, m, p.fa, fm, p.depth + 1});
    }
    f_prev = fb;
  }
  res.turns = total / (2 * std::numbers::pi);
  res.degree = static_cast<int>(std::lround(res.turns));
  if (std::abs(res.turns - res.degree) > 1e-6) throw NonConvergent("winding_number: total angle is not a multiple of 2 pi");
  return res;
}

int winding_degree(const PlanarMap& map, const BoundaryCurve& curve, const Point2d& y, const WindingOptions& opts) {
  return winding_number(map, curve, y, opts).degree;
}

TestFunction TestFunction::bump(const Point2d& c, double r1, double r2, double amplitude) {
  if (!(r1 > 0) || !(r2 > 0)) throw std::invalid_argument("TestFunction::bump: radii must be positive");
  TestFunction t;
  t.center = c;
  t.r1 = r1;
  t.r2 = r2;
  t.amplitude = amplitude;
  return t;
}

TestFunction TestFunction::constant(double value) {
  TestFunction t;
  t.amplitude = value;
  t.is_constant = true;
  return t;
}

namespace {

// (1 - s^2)^3 and its derivative, zero for |s| >= 1.
double profile(double s) {
  const double q = 1 - s * s;
  return q > 0 ? q * q * q : 0.0;
}
double profile_d(double s) {
  const double q = 1 - s * s;
  return q > 0 ? -6 * s * q * q : 0.0;
}

}  // namespace

double TestFunction::operator()(const Point2d& x) const {
  if (is_constant) return amplitude;
  return amplitude * profile((x.x1 - center.x1) / r1) * profile((x.x2 - center.x2) / r2);
}

Point2d TestFunction::gradient(const Point2d& x) const {
  if (is_constant) return {0, 0};
  const double s1 = (x.x1 - center.x1) / r1, s2 = (x.x2 - center.x2) / r2;
  return {amplitude * profile_d(s1) * profile(s2) / r1, amplitude * profile(s1) * profile_d(s2) / r2};
}

Rect2d TestFunction::support() const {
  if (is_constant) return Rect2d({-1e300, -1e300}, {1e300, 1e300});
  return Rect2d::centered(center, r1, r2);
}

double TestFunction::integral() const {
  if (is_constant) throw std::domain_error("TestFunction::integral: constant has no finite integral");
  const double c = 32.0 / 35.0;
  return amplitude * r1 * r2 * c * c;
}

ImageBoundary::ImageBoundary(const PlanarMap& map, const BoundaryCurve& curve, double slack) : slack_(slack) {
  curve.validate(false);
  if (!(map.lipschitz > 0)) throw std::invalid_argument("ImageBoundary: map needs a Lipschitz bound");
  if (!(slack > 0)) throw std::invalid_argument("ImageBoundary: slack must be positive");
  // Parameter spacing h gives every curve point a sample within h/2, hence an
  // image sample within L h / 2 = slack.
  const double h = 2 * slack / map.lipschitz;
  std::size_t total = 0;
  for (std::size_t e = 0; e + 1 < curve.vertices.size(); ++e)
    total += static_cast<std::size_t>(std::ceil(euclid_distance(curve.vertices[e], curve.vertices[e + 1]) / h));
  if (total > 50'000'000) throw std::invalid_argument("ImageBoundary: slack too small for this map");
  pts_.reserve(total + 1);
  for (std::size_t e = 0; e + 1 < curve.vertices.size(); ++e) {
    const Point2d a = curve.vertices[e], b = curve.vertices[e + 1];
    const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(euclid_distance(a, b) / h)));
    for (std::size_t i = 0; i < n; ++i) pts_.push_back(map(a + (static_cast<double>(i) / n) * (b - a)));
  }
  pts_.push_back(pts_.front());

  const Rect2d box = bounding_box();
  origin_ = box.lo;
  bucket_ = std::max({2 * slack, diameter(box) / 1024, 1e-12});
  for (std::size_t i = 0; i < pts_.size(); ++i) {
    const auto bi = static_cast<long long>(std::floor((pts_[i].x1 - origin_.x1) / bucket_));
    const auto bj = static_cast<long long>(std::floor((pts_[i].x2 - origin_.x2) / bucket_));
    grid_[key(bi, bj)].push_back(i);
  }
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
    const double lo = std::min(pts_[i].x2, pts_[i + 1].x2), hi = std::max(pts_[i].x2, pts_[i + 1].x2);
    const auto s0 = static_cast<long long>(std::floor((lo - origin_.x2) / bucket_));
    const auto s1 = static_cast<long long>(std::floor((hi - origin_.x2) / bucket_));
    for (long long s = s0; s <= s1; ++s) strips_[s].push_back(i);
  }
}

Rect2d ImageBoundary::bounding_box() const {
  Point2d lo = pts_.front(), hi = pts_.front();
  for (const auto& v : pts_) {
    lo = {std::min(lo.x1, v.x1), std::min(lo.x2, v.x2)};
    hi = {std::max(hi.x1, v.x1), std::max(hi.x2, v.x2)};
  }
  return Rect2d(lo, hi);
}

bool ImageBoundary::clear_of(const Point2d& y, double r) const {
  const double R = r + slack_;
  const double R2 = R * R;
  auto near = [&](const Point2d& p) {
    const double dx = p.x1 - y.x1, dy = p.x2 - y.x2;
    return dx * dx + dy * dy <= R2;
  };
  const double span = 2 * R / bucket_ + 2;
  if (span * span > static_cast<double>(pts_.size())) {
    return std::none_of(pts_.begin(), pts_.end(), near);
  }
  const auto i0 = static_cast<long long>(std::floor((y.x1 - R - origin_.x1) / bucket_));
  const auto i1 = static_cast<long long>(std::floor((y.x1 + R - origin_.x1) / bucket_));
  const auto j0 = static_cast<long long>(std::floor((y.x2 - R - origin_.x2) / bucket_));
  const auto j1 = static_cast<long long>(std::floor((y.x2 + R - origin_.x2) / bucket_));
  for (long long i = i0; i <= i1; ++i)
    for (long long j = j0; j <= j1; ++j) {
      const auto it = grid_.find(key(i, j));
      if (it == grid_.end()) continue;
      for (std::size_t idx : it->second)
        if (near(pts_[idx])) return false;
    }
  return true;
}

int ImageBoundary::polygon_winding(const Point2d& y) const {
  // Crossing-number winding: upward edges with y strictly left count +1,
  // downward edges with y strictly right count -1.
  // Only edges meeting the horizontal line through y can contribute.
  const auto it = strips_.find(static_cast<long long>(std::floor((y.x2 - origin_.x2) / bucket_)));
  if (it == strips_.end()) return 0;
  int w = 0;
  for (std::size_t i : it->second) {
    const Point2d& a = pts_[i];
    const Point2d& b = pts_[i + 1];
    const double side = (b.x1 - a.x1) * (y.x2 - a.x2) - (y.x1 - a.x1) * (b.x2 - a.x2);
    if (a.x2 <= y.x2) {
      if (b.x2 > y.x2 && side > 0) ++w;
    } else if (b.x2 <= y.x2 && side < 0) {
      --w;
    }
  }
  return w;
}

namespace {

// Square blocks over box; blocks whose disk misses the image curve are handed
// to `uniform`, blocks of side <= h that do not are handed to `leaf`.
template <class Uniform, class Leaf>
void scan_blocks(const Rect2d& box, double h, const ImageBoundary& bd, Uniform&& uniform, Leaf&& leaf) {
  double side = h;
  while (side < std::max(box.width(), box.height())) side *= 2;
  std::vector<std::pair<Rect2d, double>> stack{{Rect2d(box.lo, box.lo + Point2d{side, side}), side}};
  while (!stack.empty()) {
    const auto [block, s] = stack.back();
    stack.pop_back();
    Rect2d clip;
    if (!rect_intersect(block, box, clip) || !(clip.area() > 0)) continue;
    const double half_diag = diameter(clip) / 2;
    if (bd.clear_of(clip.center(), half_diag)) {
      uniform(clip);
      continue;
    }
    if (s <= h * (1 + 1e-9)) {
      leaf(clip);
      continue;
    }
    const Point2d m = block.center();
    stack.push_back({Rect2d(m, block.hi), s / 2});
    stack.push_back({Rect2d({block.lo.x1, m.x2}, {m.x1, block.hi.x2}), s / 2});
    stack.push_back({Rect2d({m.x1, block.lo.x2}, {block.hi.x1, m.x2}), s / 2});
    stack.push_back({Rect2d(block.lo, m), s / 2});
  }
}

// Midpoint samples on an m x m grid of a raster cell.
template <class Fn>
void for_each_subsample(const Rect2d& c, int m, Fn&& fn) {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      fn(Point2d{c.lo.x1 + c.width() * (i + 0.5) / m, c.lo.x2 + c.height() * (j + 0.5) / m});
}

Rect2d root_for(const PlanarMap& f, const Rect2d& r) { return f.domain.contains(r) ? f.domain : r; }

}  // namespace

QuadResult integrate_degree(const PlanarMap& map, const BoundaryCurve& curve, const Rect2d& box,
                            const std::function<double(const Point2d&)>& weight, const DegreeOptions& opts) {
  QuadResult out;
  if (!(box.area() > 0)) return out;
  const double h = std::max(box.width(), box.height()) / opts.grid_n;
  const ImageBoundary bd(map, curve, h / 4);
  QuadOptions q = opts.quad;
  scan_blocks(
      box, h, bd,
      [&](const Rect2d& c) {
        ++out.cells;
        const int d = bd.polygon_winding(c.center());
        if (d == 0) return;
        QuadOptions local = q;
        local.abs_tol = q.abs_tol * c.area() / box.area();
        local.top_depth = 0;
        const auto r = integrate(weight, c, c, local, {});
        out.value += d * r.value;
        out.error += std::abs(d) * r.error;
        out.converged = out.converged && r.converged;
      },
      [&](const Rect2d& c) {
        ++out.cells;
        ++out.mixed_leaves;
        const int m = std::max(1, opts.leaf_samples);
        const double da = c.area() / (m * m);
        for_each_subsample(c, m, [&](const Point2d& y) {
          const double w = weight(y);
          out.value += bd.polygon_winding(y) * w * da;
          out.error += std::abs(w) * da;
        });
      });
  return out;
}

IdentityCheck degree_formula_check(const PlanarMap& map, const Rect2d& U, const TestFunction& eta,
                                   const DegreeOptions& opts) {
  if (!map.has_jacobian()) throw std::invalid_argument("degree_formula_check: map has no Jacobian");
  if (eta.is_constant) throw std::invalid_argument("degree_formula_check: eta must be compactly supported");
  const BoundaryCurve curve = rectangle_curve(U);
  const Rect2d S = eta.support();
  {
    const ImageBoundary bd(map, curve, diameter(S) * 1e-3);
    for (const auto& p : bd.points())
      if (p.x1 >= S.lo.x1 - bd.slack() && p.x1 <= S.hi.x1 + bd.slack() && p.x2 >= S.lo.x2 - bd.slack() &&
          p.x2 <= S.hi.x2 + bd.slack())
        throw std::domain_error("degree_formula_check: support of eta meets the image of the boundary");
  }
  IdentityCheck out;
  QuadOptions q = opts.quad;
  q.min_smooth_depth = std::max(q.min_smooth_depth, 5);
  const auto lhs = integrate([&](const Point2d& x) { return eta(map(x)) * map.jacobian(x); }, U, root_for(map, U), q,
                             map.smooth_on);
  const auto rhs = integrate_degree(map, curve, S, [&](const Point2d& y) { return eta(y); }, opts);
  out.lhs = lhs.value;
  out.rhs = rhs.value;
  out.residual = std::abs(out.lhs - out.rhs);
  out.error_estimate = lhs.error + rhs.error;
  return out;
}

IdentityCheck aux_degree_identity(const PlanarMap& f, const Rect2d& U, const DegreeOptions& opts) {
  if (!f.has_jacobian()) throw std::invalid_argument("aux_degree_identity: map has no gradient");
  const PlanarMap g = first_coordinate_map(f);
  const BoundaryCurve curve = rectangle_curve(U);
  IdentityCheck out;
  Rect2d box;
  {
    const ImageBoundary probe(g, curve, diameter(U) * 1e-3);
    const Rect2d b = probe.bounding_box();
    const double pad = 2 * probe.slack();
    box = Rect2d(b.lo - Point2d{pad, pad}, b.hi + Point2d{pad, pad});
    const double area = polyline_curve(probe.points()).signed_area();
    if (std::abs(area) < 1e-9 * box.area()) out.note = "degenerate boundary image";
  }
  const auto lhs = integrate_degree(g, curve, box, [](const Point2d&) { return 1.0; }, opts);
  const auto rhs = integrate([&](const Point2d& x) { return f.gradient(x).m11; }, U, root_for(f, U), opts.quad,
                             f.smooth_on);
  out.lhs = lhs.value;
  out.rhs = rhs.value;
  out.residual = std::abs(out.lhs - out.rhs);
  out.error_estimate = lhs.error + rhs.error;
  return out;
}

QuadResult distributional_jacobian(const PlanarMap& f, const TestFunction& phi, const QuadOptions& opts) {
  if (!f.has_jacobian()) throw std::invalid_argument("distributional_jacobian: map has no gradient");
  Rect2d dom;
  if (!rect_intersect(phi.support(), f.domain, dom)) return {};
  if (!phi.is_constant && !f.domain.contains(phi.support()))
    throw std::invalid_argument("distributional_jacobian: support of phi leaves the domain");
  return integrate(
      [&](const Point2d& x) {
        const Mat2d d = f.gradient(x);
        const Point2d g = phi.gradient(x);
        return -f(x).x1 * (g.x1 * d.m22 - g.x2 * d.m21);
      },
      dom, root_for(f, dom), opts, f.smooth_on);
}

ImageArea image_area(const PlanarMap& f, const Rect2d& E, int grid_n, int leaf_samples) {
  if (!f.inverse) throw std::invalid_argument("image_area: map has no inverse");
  if (grid_n < 1) throw std::invalid_argument("image_area: grid_n must be positive");
  const BoundaryCurve curve = rectangle_curve(E);
  Rect2d box;
  {
    const ImageBoundary probe(f, curve, diameter(E) * 1e-2);
    const Rect2d b = probe.bounding_box();
    const double pad = probe.slack();
    box = Rect2d(b.lo - Point2d{pad, pad}, b.hi + Point2d{pad, pad});
  }
  ImageArea out;
  out.cell_size = std::max(box.width(), box.height()) / grid_n;
  const ImageBoundary bd(f, curve, out.cell_size / 4);
  auto inside = [&](const Point2d& y) {
    try {
      return rect_contains(E, f.inverse(y), true);
    } catch (const OutsideError&) {
      return false;
    }
  };
  scan_blocks(
      box, out.cell_size, bd,
      [&](const Rect2d& c) {
        if (inside(c.center())) out.area += c.area();
      },
      [&](const Rect2d& c) {
        ++out.boundary_cells;
        out.error_bound += c.area();
        const int m = std::max(1, leaf_samples);
        for_each_subsample(c, m, [&](const Point2d& y) {
          if (inside(y)) out.area += c.area() / (m * m);
        });
      });
  return out;
}

IdentityCheck det_equals_area_check(const PlanarMap& f, const Rect2d& E, const DegreeOptions& opts) {
  if (!f.has_jacobian()) throw std::invalid_argument("det_equals_area_check: map has no gradient");
  const auto lhs = integrate([&](const Point2d& x) { return f.jacobian(x); }, E, root_for(f, E), opts.quad, f.smooth_on);
  const auto rhs = image_area(f, E, opts.grid_n, opts.leaf_samples);
  IdentityCheck out;
  out.lhs = lhs.value;
  out.rhs = rhs.area;
  out.residual = std::abs(out.lhs - out.rhs);
  out.error_estimate = lhs.error + rhs.error_bound;
  return out;
}

double stieltjes_boundary(const std::function<double(const Point2d&)>& u,
                          const std::function<double(const Point2d&)>& v, const BoundaryCurve& curve, double tol,
                          int max_doublings) {
  curve.validate(false);
  auto sum = [&](int n) {
    double s = 0;
    for (std::size_t e = 0; e + 1 < curve.vertices.size(); ++e) {
      const Point2d a = curve.vertices[e], b = curve.vertices[e + 1];
      double v_prev = v(a);
      for (int i = 0; i < n; ++i) {
        const Point2d p1 = a + (static_cast<double>(i + 1) / n) * (b - a);
        const Point2d mid = a + ((i + 0.5) / n) * (b - a);
        const double v_next = v(p1);
        s += u(mid) * (v_next - v_prev);
        v_prev = v_next;
      }
    }
    return s;
  };
  double prev = sum(1);
  for (int d = 1, n = 2; d <= max_doublings; ++d, n *= 2) {
    const double cur = sum(n);
    if (std::abs(cur - prev) < tol) return cur;
    prev = cur;
  }
  throw NonConvergent("stieltjes_boundary: sums did not settle");
}

}  // namespace bvhomeo
