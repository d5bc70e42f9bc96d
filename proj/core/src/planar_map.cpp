#include "bvhomeo/planar_map.hpp"

#include "bvhomeo/cantor.hpp"
#include "bvhomeo/derivative.hpp"

#include <cmath>
#include <stdexcept>

namespace bvhomeo {

namespace {

Point2d swap(const Point2d& p) { return {p.x2, p.x1}; }
Rect2d swap(const Rect2d& r) { return Rect2d(swap(r.lo), swap(r.hi)); }
Mat2d swap_rows(const Mat2d& m) { return {m.m21, m.m22, m.m11, m.m12}; }
Mat2d swap_cols(const Mat2d& m) { return {m.m12, m.m11, m.m22, m.m21}; }

Mat2d inverse_of(const Mat2d& m) {
  const double d = m.det();
  if (d == 0) throw std::domain_error("singular matrix");
  return {m.m22 / d, -m.m12 / d, -m.m21 / d, m.m11 / d};
}

}  // namespace

double level_lipschitz(int k) {
  require_level(k);
  // Entrywise: |d11| <= 2^{j+2} + 2, |d12| <= 2^j, |d21|, |d22| <= 4 on every
  // level j <= k; the Frobenius norm of that is below 2^{k+3}.
  return pow2<double>(k + 3);
}

PlanarMap level_map(int k, Orientation orientation) {
  require_level(k);
  PlanarMap m;
  m.domain = unit_box();
  m.lipschitz = m.inverse_lipschitz = level_lipschitz(k);
  auto f = [k](const Point2d& x) { return f_level_eval(k, x); };
  auto df = [k](const Point2d& x) { return f_grad(k, x, SeamPolicy::lenient).grad; };
  auto kind = [k](const Rect2d& r) { return f_piece_kind(k, r); };
  if (orientation == Orientation::construction) {
    m.name = "f_" + std::to_string(k);
    m.eval = m.inverse = f;
    m.gradient = m.inverse_gradient = df;
    m.smooth_on = m.inverse_smooth_on = kind;
  } else {
    m.name = "F_" + std::to_string(k);
    m.eval = [f](const Point2d& x) { return swap(f(x)); };
    m.gradient = [df](const Point2d& x) { return swap_rows(df(x)); };
    m.inverse = [f](const Point2d& y) { return f(swap(y)); };
    m.inverse_gradient = [df](const Point2d& y) { return swap_cols(df(swap(y))); };
    m.smooth_on = kind;
    m.inverse_smooth_on = [kind](const Rect2d& r) { return kind(swap(r)); };
  }
  return m;
}

PlanarMap identity_map(const Rect2d& domain) {
  PlanarMap m = linear_map(Mat2d::identity(), domain);
  m.name = "identity";
  return m;
}

PlanarMap linear_map(const Mat2d& a, const Rect2d& domain) {
  PlanarMap m;
  m.name = "linear";
  m.domain = domain;
  m.eval = [a](const Point2d& x) { return mat_apply(a, x); };
  m.gradient = [a](const Point2d&) { return a; };
  m.lipschitz = norms(a).operator2;
  if (a.det() != 0) {
    const Mat2d inv = inverse_of(a);
    m.inverse = [inv](const Point2d& y) { return mat_apply(inv, y); };
    m.inverse_gradient = [inv](const Point2d&) { return inv; };
    m.inverse_lipschitz = norms(inv).operator2;
  }
  m.smooth_on = m.inverse_smooth_on = [](const Rect2d&) { return CellKind::smooth; };
  return m;
}

PlanarMap cube_map() {
  PlanarMap m;
  m.name = "cube";
  m.domain = Rect2d({0, 0}, {1, 1});
  m.eval = [](const Point2d& x) { return Point2d{x.x1 * x.x1 * x.x1, x.x2}; };
  m.gradient = [](const Point2d& x) { return Mat2d{3 * x.x1 * x.x1, 0, 0, 1}; };
  m.inverse = [](const Point2d& y) { return Point2d{std::cbrt(y.x1), y.x2}; };
  m.inverse_gradient = [](const Point2d& y) {
    const double c = std::cbrt(y.x1);
    return Mat2d{1 / (3 * c * c), 0, 0, 1};
  };
  m.smooth_on = m.inverse_smooth_on = [](const Rect2d&) { return CellKind::smooth; };
  m.lipschitz = 3;
  return m;
}

PlanarMap square_map() {
  PlanarMap m;
  m.name = "square";
  m.domain = unit_box();
  m.eval = [](const Point2d& x) { return Point2d{x.x1 * x.x1 - x.x2 * x.x2, 2 * x.x1 * x.x2}; };
  m.gradient = [](const Point2d& x) { return Mat2d{2 * x.x1, -2 * x.x2, 2 * x.x2, 2 * x.x1}; };
  m.smooth_on = [](const Rect2d&) { return CellKind::smooth; };
  m.lipschitz = 2 * std::sqrt(2.0) * (1 + 1e-12);
  return m;
}

PlanarMap conjugation_map(const Rect2d& domain) {
  PlanarMap m = linear_map({1, 0, 0, -1}, domain);
  m.name = "conjugation";
  return m;
}

PlanarMap first_coordinate_map(const PlanarMap& f) {
  if (!f.eval) throw std::invalid_argument("first_coordinate_map: map has no values");
  PlanarMap g;
  g.name = "(" + f.name + ")_1 x id";
  g.domain = f.domain;
  g.eval = [e = f.eval](const Point2d& x) { return Point2d{e(x).x1, x.x2}; };
  if (f.gradient)
    g.gradient = [d = f.gradient](const Point2d& x) {
      const Mat2d m = d(x);
      return Mat2d{m.m11, m.m12, 0, 1};
    };
  g.smooth_on = f.smooth_on;
  g.lipschitz = f.lipschitz > 0 ? f.lipschitz + 1 : 0;
  return g;
}

PlanarMap second_inverse_coordinate_map(const PlanarMap& f) {
  if (!f.inverse) throw std::invalid_argument("second_inverse_coordinate_map: map has no inverse");
  PlanarMap h;
  h.name = "id x (" + f.name + "^-1)_2";
  h.domain = f.domain;
  h.eval = [inv = f.inverse](const Point2d& y) { return Point2d{y.x1, inv(y).x2}; };
  if (f.inverse_gradient)
    h.gradient = [d = f.inverse_gradient](const Point2d& y) {
      const Mat2d m = d(y);
      return Mat2d{1, 0, m.m21, m.m22};
    };
  h.smooth_on = f.inverse_smooth_on;
  h.lipschitz = f.inverse_lipschitz > 0 ? f.inverse_lipschitz + 1 : 0;
  return h;
}

}  // namespace bvhomeo
