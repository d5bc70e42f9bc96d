#pragma once

// Piecewise-analytic gradients of g_k and f_k, the smooth-piece geometry used
// to keep quadrature off the seams, and the total-variation integrals.

#include "bvhomeo/cantor.hpp"
#include "bvhomeo/quadrature.hpp"

namespace bvhomeo {

/// What to do when a gradient is requested exactly on a seam.
enum class SeamPolicy { strict, lenient };

template <class T>
struct GradSample {
  Point2<T> point;
  RegionTag<T> tag;
  Mat2<T> grad;
  T jac{};
};

struct MatNorms {
  double max_entry = 0;
  double operator2 = 0;
  double frobenius = 0;
  double row_max = 0;  // max of the Euclidean norms of the two rows (the TV convention)
};

MatNorms norms(const Mat2d& m);

/// Gradient of g_k at a local point of P_k. The branch formulas are the
/// derivatives of T_k^t x with t = eta on A and t = xi on B, simplified with
/// 2^k|x2| = b_k + t(b_{k+1}-b_k) on A and 2^k|x1| = a_k + t(a_{k+1}-a_k) on B.
template <class T>
GradSample<T> g_grad(int k, const Point2<T>& z, SeamPolicy policy = SeamPolicy::strict) {
  const auto p = level_params<T>(k);
  const auto tag = classify(k, z);
  if (tag.tag == Region::Outside) throw OutsideError("g_grad: point outside P_k");
  const auto [X1, X2] = detail::scaled_abs(k, z);
  if (policy == SeamPolicy::strict) {
    if (tag.tag == Region::SeamAB || tag.tag == Region::BoundaryP)
      throw SeamError(std::string("g_grad: gradient undefined on ") + region_name(tag.tag));
    if (X1 == p.a_k || X2 == p.b_k) throw SeamError("g_grad: gradient undefined on the boundary of P_k");
    if (tag.tag == Region::Q && (X1 == p.a_k1 || X2 == p.b_k1))
      throw SeamError("g_grad: gradient undefined on the boundary of Q_k");
  }
  GradSample<T> out;
  out.point = z;
  out.tag = tag;
  const T da = p.a_k - p.a_k1;
  const T db = p.b_k - p.b_k1;
  const T scale = pow2<T>(k);
  if (tag.tag == Region::Q) {
    const T q = p.a_k1 / p.b_k1;
    out.grad = {T(0), q, T(1) / q, T(0)};
  } else if (tag.tag == Region::B) {
    const T bt = p.b_k - tag.t * db;
    const T s1 = T(sign_of(z.x1));
    out.grad.m11 = scale * z.x2 * s1 * (T(1) / bt - X1 * db / (da * bt * bt));
    out.grad.m12 = X1 / bt;
    out.grad.m21 = db / da;
    out.grad.m22 = T(0);
  } else {
    // A, and in lenient mode the seam and corners, use the t = eta branch.
    const T t = tag.tag == Region::A ? tag.t : T((p.b_k - X2) / db);
    const T at = p.a_k - t * da;
    const T s2 = T(z.x2 < T(0) ? -1 : 1);
    out.grad.m11 = T(0);
    out.grad.m12 = da / db;
    out.grad.m21 = X2 / at;
    out.grad.m22 = scale * z.x1 * s2 * (T(1) / at - X2 * da / (db * at * at));
  }
  out.jac = out.grad.det();
  return out;
}

/// Gradient of the glued map f_k: the gradient of the governing translated g_j.
template <class T>
GradSample<T> f_grad(int k, const Point2<T>& x, SeamPolicy policy = SeamPolicy::strict) {
  const auto fr = cell_frame(x, k);
  auto s = g_grad(fr.level, Point2<T>(x - fr.center), policy);
  s.point = x;
  return s;
}

/// Convex smooth pieces of P_k: Q_k, the upper/lower halves of A_k and the
/// right/left halves of B_k.
enum class Piece { Q, A_upper, A_lower, B_right, B_left };

/// True when the closed local rectangle lies inside the closed piece.
bool rect_in_piece(int k, const Rect2d& local, Piece piece);

/// Smooth when f_k restricted to r is given by a single branch formula.
CellKind f_piece_kind(int k, const Rect2d& r);

/// Quadrature result paired with the bound it is checked against.
struct RegionIntegral {
  QuadResult quad;
  double bound = 0;
};

/// Region of P_k used by tv_region.
enum class TVRegion { A, B, Q };

/// Integral of the row-max gradient norm of g_k over a region (float mode).
RegionIntegral tv_region(int k, TVRegion region, const QuadOptions& opts = {});

/// Exact integral of |Dg_k| over Q_k (the gradient is constant there).
Rational tv_region_q_exact(int k);

/// Exact areas of the regions (closed forms from the trapezoid geometry).
Rational region_area_exact(int k, TVRegion region);

struct TVReport {
  int k = 0;
  double tv_A = 0, tv_B = 0, tv_Q = 0;
  double bound_A = 0, bound_B = 0, bound_Q = 0;
  std::vector<double> shell;        // shell[j-1] = 4^j (tv_A(j) + tv_B(j))
  std::vector<double> shell_bound;  // 2^{4-j}
  double q_term = 0;                // 4^k tv_Q(k)
  double tv_total_fk = 0;
  double quadrature_error = 0;
  bool converged = true;

  bool within_bounds(double slack) const;
};

/// Assembles the total variation of f_k over Q_0 from the level integrals.
TVReport tv_total(int k, const QuadOptions& opts = {}, int max_level = 8);

struct VerticalVariation {
  double variation = 0;  // V
  double length = 0;     // L = sum of |Y_beta|
};

/// Variation of x2 -> f_{k,1}(z1, x2) over the level-k intervals Y_beta.
VerticalVariation vertical_variation(int k, double z1, int samples_per_cell = 2048);

}  // namespace bvhomeo
