#include "bvhomeo/derivative.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bvhomeo {

MatNorms norms(const Mat2d& m) {
  MatNorms n;
  n.max_entry = std::max({std::abs(m.m11), std::abs(m.m12), std::abs(m.m21), std::abs(m.m22)});
  n.frobenius = std::sqrt(m.m11 * m.m11 + m.m12 * m.m12 + m.m21 * m.m21 + m.m22 * m.m22);
  n.row_max = std::max(std::hypot(m.m11, m.m12), std::hypot(m.m21, m.m22));
  // Largest singular value from the 2x2 closed form.
  const double f2 = n.frobenius * n.frobenius;
  const double d = m.det();
  n.operator2 = std::sqrt(std::max(0.0, (f2 + std::sqrt(std::max(0.0, f2 * f2 - 4 * d * d))) / 2));
  return n;
}

namespace {

struct LocalCorners {
  std::array<Point2d, 4> pts;
};

LocalCorners corners(const Rect2d& r) {
  return {{Point2d{r.lo.x1, r.lo.x2}, Point2d{r.hi.x1, r.lo.x2}, Point2d{r.lo.x1, r.hi.x2}, Point2d{r.hi.x1, r.hi.x2}}};
}

bool corner_in_piece(const LevelParams<double>& p, const Point2d& z, Piece piece) {
  const double s = pow2<double>(p.k);
  const double X1 = s * std::abs(z.x1), X2 = s * std::abs(z.x2);
  const double da = p.a_k - p.a_k1, db = p.b_k - p.b_k1;
  if (X1 > p.a_k || X2 > p.b_k) return false;
  switch (piece) {
    case Piece::Q:
      return X1 <= p.a_k1 && X2 <= p.b_k1;
    case Piece::A_upper:
    case Piece::A_lower:
      if (piece == Piece::A_upper ? z.x2 < 0 : z.x2 > 0) return false;
      return X2 >= p.b_k1 && (p.a_k - X1) * db >= (p.b_k - X2) * da;
    case Piece::B_right:
    case Piece::B_left:
      if (piece == Piece::B_right ? z.x1 < 0 : z.x1 > 0) return false;
      return X1 >= p.a_k1 && (p.a_k - X1) * db <= (p.b_k - X2) * da;
  }
  return false;
}

}  // namespace

bool rect_in_piece(int k, const Rect2d& local, Piece piece) {
  const auto p = level_params<double>(k);
  // Pieces are convex, so the four corners decide.
  for (const auto& c : corners(local).pts)
    if (!corner_in_piece(p, c, piece)) return false;
  return true;
}

CellKind f_piece_kind(int k, const Rect2d& r) {
  require_level(k);
  if (!unit_box().contains(r)) return CellKind::mixed;
  Point2d center{0, 0};
  for (int j = 1; j <= k; ++j) {
    const double sa = pow2<double>(-j) * seq_a<double>(j);
    const double sb = pow2<double>(-j) * seq_b<double>(j);
    // Child interval along each axis; straddling the parent center is a seam.
    int s1 = 0, s2 = 0;
    if (r.hi.x1 <= center.x1) s1 = -1;
    else if (r.lo.x1 >= center.x1) s1 = 1;
    if (r.hi.x2 <= center.x2) s2 = -1;
    else if (r.lo.x2 >= center.x2) s2 = 1;
    if (s1 == 0 || s2 == 0) return CellKind::mixed;
    const Point2d c{center.x1 + s1 * sa, center.x2 + s2 * sb};
    const Rect2d local(r.lo - c, r.hi - c);
    if (std::abs(local.lo.x1) > sa || std::abs(local.hi.x1) > sa || std::abs(local.lo.x2) > sb ||
        std::abs(local.hi.x2) > sb)
      return CellKind::mixed;
    if (rect_in_piece(j, local, Piece::Q)) {
      if (j == k) return CellKind::smooth;
      center = c;
      continue;
    }
    for (Piece pc : {Piece::A_upper, Piece::A_lower, Piece::B_right, Piece::B_left})
      if (rect_in_piece(j, local, pc)) return CellKind::smooth;
    return CellKind::mixed;
  }
  return CellKind::mixed;
}

namespace {

double grad_row_norm(int k, const Point2d& z) {
  return norms(g_grad(k, z, SeamPolicy::lenient).grad).row_max;
}

// Integral over a trapezoid half of A_k or B_k, mapped from the unit square.
QuadResult trapezoid_integral(int k, Piece piece, const QuadOptions& opts) {
  const auto p = level_params<double>(k);
  const double s = pow2<double>(-k);
  const double ha0 = s * p.a_k, ha1 = s * p.a_k1, hb0 = s * p.b_k, hb1 = s * p.b_k1;
  Integrand fn;
  if (piece == Piece::A_upper || piece == Piece::A_lower) {
    const double sign = piece == Piece::A_upper ? 1.0 : -1.0;
    fn = [=](const Point2d& us) {
      const double w = ha1 + us.x2 * (ha0 - ha1);
      const Point2d z{(2 * us.x1 - 1) * w, sign * (hb1 + us.x2 * (hb0 - hb1))};
      return grad_row_norm(k, z) * 2 * w * (hb0 - hb1);
    };
  } else {
    const double sign = piece == Piece::B_right ? 1.0 : -1.0;
    fn = [=](const Point2d& us) {
      const double h = hb1 + us.x2 * (hb0 - hb1);
      const Point2d z{sign * (ha1 + us.x2 * (ha0 - ha1)), (2 * us.x1 - 1) * h};
      return grad_row_norm(k, z) * 2 * h * (ha0 - ha1);
    };
  }
  const Rect2d square({0, 0}, {1, 1});
  QuadOptions o = opts;
  o.abs_tol = opts.abs_tol / 2;
  return integrate(fn, square, square, o, {});
}

QuadResult combine(const QuadResult& a, const QuadResult& b) {
  QuadResult r;
  r.value = a.value + b.value;
  r.error = a.error + b.error;
  r.converged = a.converged && b.converged;
  r.cells = a.cells + b.cells;
  return r;
}

}  // namespace

RegionIntegral tv_region(int k, TVRegion region, const QuadOptions& opts) {
  require_level(k);
  RegionIntegral out;
  const double bound_ab = pow2<double>(4 - 3 * k);
  switch (region) {
    case TVRegion::A:
      out.quad = combine(trapezoid_integral(k, Piece::A_upper, opts), trapezoid_integral(k, Piece::A_lower, opts));
      out.bound = bound_ab;
      break;
    case TVRegion::B:
      out.quad = combine(trapezoid_integral(k, Piece::B_right, opts), trapezoid_integral(k, Piece::B_left, opts));
      out.bound = bound_ab;
      break;
    case TVRegion::Q: {
      const auto p = level_params<double>(k);
      out.quad = integrate([k](const Point2d& z) { return grad_row_norm(k, z); }, p.Q, p.Q, opts, {});
      out.bound = pow2<double>(2 - 2 * k) * p.a_k1 * p.a_k1;
      break;
    }
  }
  return out;
}

Rational tv_region_q_exact(int k) {
  const auto p = level_params<Rational>(k);
  // Dg_k = T_k^1 on Q_k; probe the center and a corner to confirm.
  const auto g0 = g_grad<Rational>(k, {Rational(0), Rational(0)}).grad;
  const auto g1 = g_grad<Rational>(k, {p.Q.hi.x1 / 2, p.Q.lo.x2 / 3}).grad;
  if (!(g0 == g1) || !(g0 == transfer_matrix<Rational>(k, Rational(1))))
    throw std::logic_error("tv_region_q_exact: gradient not constant on Q_k");
  // Row norms of an anti-diagonal matrix are |m12| and |m21|; both rational.
  const Rational row_max = std::max(abs_value(g0.m12), abs_value(g0.m21));
  return p.Q.area() * row_max;
}

Rational region_area_exact(int k, TVRegion region) {
  const auto p = level_params<Rational>(k);
  const Rational s = pow2<Rational>(1 - 2 * k);
  switch (region) {
    case TVRegion::A: return s * (p.b_k - p.b_k1) * (p.a_k + p.a_k1);
    case TVRegion::B: return s * (p.a_k - p.a_k1) * (p.b_k + p.b_k1);
    case TVRegion::Q: return p.Q.area();
  }
  return Rational(0);
}

bool TVReport::within_bounds(double slack) const {
  if (!(tv_total_fk <= 20 + slack)) return false;
  if (!(q_term <= 4 + slack)) return false;
  for (std::size_t j = 0; j < shell.size(); ++j)
    if (!(shell[j] <= shell_bound[j] + slack)) return false;
  return tv_A <= bound_A + slack && tv_B <= bound_B + slack && tv_Q <= bound_Q + slack;
}

TVReport tv_total(int k, const QuadOptions& opts, int max_level) {
  require_level(k);
  if (k > max_level) throw std::invalid_argument("tv_total: level exceeds configured maximum");
  TVReport rep;
  rep.k = k;
  for (int j = 1; j <= k; ++j) {
    const auto a = tv_region(j, TVRegion::A, opts);
    const auto b = tv_region(j, TVRegion::B, opts);
    const double w = pow2<double>(2 * j);
    rep.shell.push_back(w * (a.quad.value + b.quad.value));
    rep.shell_bound.push_back(pow2<double>(4 - j));
    rep.quadrature_error += w * (a.quad.error + b.quad.error);
    rep.converged = rep.converged && a.quad.converged && b.quad.converged;
    if (j == k) {
      rep.tv_A = a.quad.value;
      rep.tv_B = b.quad.value;
      rep.bound_A = a.bound;
      rep.bound_B = b.bound;
    }
  }
  const auto q = tv_region(k, TVRegion::Q, opts);
  rep.tv_Q = q.quad.value;
  rep.bound_Q = q.bound;
  rep.q_term = pow2<double>(2 * k) * q.quad.value;
  rep.quadrature_error += pow2<double>(2 * k) * q.quad.error;
  rep.converged = rep.converged && q.quad.converged;
  rep.tv_total_fk = rep.q_term;
  for (double s : rep.shell) rep.tv_total_fk += s;
  return rep;
}

VerticalVariation vertical_variation(int k, double z1, int samples_per_cell) {
  require_level(k);
  if (samples_per_cell < 1) throw std::invalid_argument("vertical_variation: need at least one sample");
  const auto d = detail::descend_1d(z1, k, [](int j) { return seq_a<double>(j); });
  if (d.depth < k) throw std::invalid_argument("vertical_variation: z1 is not in the level-k nest of X");
  VerticalVariation out;
  const double half = pow2<double>(-k) * seq_b<double>(k);
  for (const auto& beta : SignCode::all(k)) {
    const double v = code_point<double>(beta).second;
    double prev = f_level_eval(k, Point2d{z1, v - half}).x1;
    for (int i = 1; i <= samples_per_cell; ++i) {
      const double x2 = v - half + 2 * half * i / samples_per_cell;
      const double cur = f_level_eval(k, Point2d{z1, x2}).x1;
      out.variation += std::abs(cur - prev);
      prev = cur;
    }
    out.length += 2 * half;
  }
  return out;
}

}  // namespace bvhomeo
