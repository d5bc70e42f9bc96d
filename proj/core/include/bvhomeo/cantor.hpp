#pragma once

// The Cantor-type BV homeomorphism: level constants a_k, b_k, the building
// block g_k on P_k, the glued approximants f_k on Q_0 = [-1,1]^2 and the
// cell bookkeeping (codes, centers, rectangles, point location).
//
// Everything is templated on the scalar so that structural identities can be
// checked exactly with Rational and evaluated fast with double.

#include "bvhomeo/core_types.hpp"
#include "bvhomeo/errors.hpp"

#include <optional>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

namespace bvhomeo {

inline void require_level(int k) {
  if (k < 1) throw std::invalid_argument("level must be >= 1, got " + std::to_string(k));
}

/// a_k = (1 + 2^{1-k}) / 2, decreasing from 1 to 1/2.
template <class T>
T seq_a(int k) {
  require_level(k);
  return (T(1) + pow2<T>(1 - k)) / 2;
}

/// b_k = 2^{1-k}.
template <class T>
T seq_b(int k) {
  require_level(k);
  return pow2<T>(1 - k);
}

template <class T>
struct LevelParams {
  int k = 0;
  T a_k, a_k1, b_k, b_k1;
  Rect2<T> P;  // [-2^-k a_k, 2^-k a_k] x [-2^-k b_k, 2^-k b_k]
  Rect2<T> Q;  // same with a_{k+1}, b_{k+1}
};

template <class T>
LevelParams<T> make_level_params(int k) {
  require_level(k);
  LevelParams<T> p;
  p.k = k;
  p.a_k = seq_a<T>(k);
  p.a_k1 = seq_a<T>(k + 1);
  p.b_k = seq_b<T>(k);
  p.b_k1 = seq_b<T>(k + 1);
  const T s = pow2<T>(-k);
  p.P = Rect2<T>::centered({T(0), T(0)}, s * p.a_k, s * p.b_k);
  p.Q = Rect2<T>::centered({T(0), T(0)}, s * p.a_k1, s * p.b_k1);
  return p;
}

namespace detail {
inline constexpr int kCachedLevels = 60;
const LevelParams<double>& cached_level_params(int k);
}  // namespace detail

/// Level constants; the double versions come from a table built once.
template <class T>
LevelParams<T> level_params(int k) {
  if constexpr (std::is_same_v<T, double>) {
    if (k >= 1 && k <= detail::kCachedLevels) return detail::cached_level_params(k);
  }
  return make_level_params<T>(k);
}

/// |S_k| = 4^k |P_k| = 4 a_k b_k.
template <class T>
T s_measure(int k) {
  return T(4) * seq_a<T>(k) * seq_b<T>(k);
}

enum class Region { Q, A, B, SeamAB, BoundaryP, Outside };

const char* region_name(Region r);

template <class T>
struct RegionTag {
  Region tag = Region::Outside;
  T t{};  // interpolation parameter; 1 on Q_k, 0 on the boundary of P_k
};

namespace detail {

// Scaled absolute coordinates 2^k |x_i|; exact in both scalar modes.
template <class T>
std::pair<T, T> scaled_abs(int k, const Point2<T>& x) {
  const T s = pow2<T>(k);
  return {s * abs_value(x.x1), s * abs_value(x.x2)};
}

template <class T>
bool in_P(const LevelParams<T>& p, const T& X1, const T& X2) {
  return X1 <= p.a_k && X2 <= p.b_k;
}

}  // namespace detail

/// (xi_k(x), eta_k(x)) for x in P_k.
template <class T>
std::pair<T, T> xi_eta(int k, const Point2<T>& x) {
  const auto p = level_params<T>(k);
  const auto [X1, X2] = detail::scaled_abs(k, x);
  if (!detail::in_P(p, X1, X2)) throw OutsideError("xi_eta: point outside P_k");
  return {(p.a_k - X1) / (p.a_k - p.a_k1), (p.b_k - X2) / (p.b_k - p.b_k1)};
}

template <class T>
RegionTag<T> classify(int k, const Point2<T>& x) {
  const auto p = level_params<T>(k);
  const auto [X1, X2] = detail::scaled_abs(k, x);
  if (!detail::in_P(p, X1, X2)) return {Region::Outside, T(0)};
  if (X1 <= p.a_k1 && X2 <= p.b_k1) return {Region::Q, T(1)};
  const T da = p.a_k - p.a_k1;
  const T db = p.b_k - p.b_k1;
  const T xi = (p.a_k - X1) / da;
  const T eta = (p.b_k - X2) / db;
  // xi >= eta compared without division so the seam is exact in both modes.
  const T lhs = (p.a_k - X1) * db;
  const T rhs = (p.b_k - X2) * da;
  if (X1 == p.a_k && X2 == p.b_k) return {Region::BoundaryP, T(0)};
  if (lhs > rhs) return {Region::A, eta};
  if (lhs < rhs) return {Region::B, xi};
  return {Region::SeamAB, xi};
}

/// Anti-diagonal matrix T_k^t with reciprocal entries; det = -1.
template <class T>
Mat2<T> transfer_matrix(int k, const T& t) {
  if (t < T(0) || t > T(1)) throw std::invalid_argument("transfer_matrix: t must lie in [0,1]");
  const T a = seq_a<T>(k), a1 = seq_a<T>(k + 1);
  const T b = seq_b<T>(k), b1 = seq_b<T>(k + 1);
  const T num = a + t * (a1 - a);
  const T den = b + t * (b1 - b);
  return {T(0), num / den, den / num, T(0)};
}

/// g_k(x) = T_k^{t(x)} x on P_k; an involution of P_k onto itself.
template <class T>
Point2<T> g_eval(int k, const Point2<T>& x) {
  const auto tag = classify(k, x);
  if (tag.tag == Region::Outside) throw OutsideError("g_eval: point outside P_k");
  return mat_apply(transfer_matrix(k, tag.t), x);
}

/// (u_alpha, v_alpha) = sum_j 2^{-j} alpha_j (a_j, b_j).
template <class T>
std::pair<T, T> code_point(const SignCode& alpha) {
  if (alpha.empty()) throw std::invalid_argument("code_point: empty code");
  T u(0), v(0);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const int j = static_cast<int>(i) + 1;
    const T w = pow2<T>(-j) * T(alpha[i]);
    u += w * seq_a<T>(j);
    v += w * seq_b<T>(j);
  }
  return {u, v};
}

struct CellAddress {
  SignCode alpha;
  SignCode beta;

  CellAddress() = default;
  CellAddress(SignCode a, SignCode b) : alpha(std::move(a)), beta(std::move(b)) {
    if (alpha.size() != beta.size() || alpha.empty())
      throw std::invalid_argument("CellAddress: codes must have equal positive length");
  }
  int level() const { return static_cast<int>(alpha.size()); }
  CellAddress swapped() const { return {beta, alpha}; }
  friend auto operator<=>(const CellAddress&, const CellAddress&) = default;
};

/// Center (u_alpha, v_beta) of P_{alpha,beta}.
template <class T>
Point2<T> cell_center(const CellAddress& c) {
  return {code_point<T>(c.alpha).first, code_point<T>(c.beta).second};
}

/// (P_{alpha,beta}, Q_{alpha,beta}).
template <class T>
std::pair<Rect2<T>, Rect2<T>> cell_rects(const CellAddress& c) {
  const int k = c.level();
  const auto center = cell_center<T>(c);
  const T s = pow2<T>(-k);
  return {Rect2<T>::centered(center, s * seq_a<T>(k), s * seq_b<T>(k)),
          Rect2<T>::centered(center, s * seq_a<T>(k + 1), s * seq_b<T>(k + 1))};
}

namespace detail {

template <class T>
struct Descent1D {
  int depth = 0;
  std::vector<int> signs;
  std::vector<T> centers;  // centers[j-1] = center at level j
};

// Follows the nested intervals containing x. On a shared endpoint the -1 child
// wins; the point then leaves the nest at the next level.
template <class T, class Seq>
Descent1D<T> descend_1d(const T& x, int kmax, Seq seq) {
  Descent1D<T> d;
  T center(0);
  for (int j = 1; j <= kmax; ++j) {
    const T step = pow2<T>(-j) * seq(j);
    const int s = x > center ? 1 : -1;
    const T c = s > 0 ? T(center + step) : T(center - step);
    if (abs_value(T(x - c)) > step) break;
    d.signs.push_back(s);
    d.centers.push_back(c);
    center = c;
    d.depth = j;
  }
  return d;
}

}  // namespace detail

template <class T>
struct CellHit {
  int level = 0;  // deepest j <= kmax with x in S_j
  CellAddress address;
  Point2<T> center;
};

/// Deepest level-j cell (j <= kmax) whose closed rectangle holds x.
template <class T>
CellHit<T> deepest_cell(const Point2<T>& x, int kmax) {
  require_level(kmax);
  auto d1 = detail::descend_1d(x.x1, kmax, [](int j) { return seq_a<T>(j); });
  auto d2 = detail::descend_1d(x.x2, kmax, [](int j) { return seq_b<T>(j); });
  const int level = std::min(d1.depth, d2.depth);
  if (level == 0) throw OutsideError("point outside Q_0 = [-1,1]^2");
  d1.signs.resize(static_cast<std::size_t>(level));
  d2.signs.resize(static_cast<std::size_t>(level));
  CellHit<T> hit;
  hit.level = level;
  hit.address = CellAddress(SignCode(d1.signs), SignCode(d2.signs));
  hit.center = {d1.centers[static_cast<std::size_t>(level - 1)], d2.centers[static_cast<std::size_t>(level - 1)]};
  return hit;
}

/// Level-k address whose closed cell holds x; ties go to the
/// lexicographically smallest code. None if x is not in S_k.
template <class T>
std::optional<CellAddress> locate(const Point2<T>& x, int k) {
  require_level(k);
  auto d1 = detail::descend_1d(x.x1, k, [](int j) { return seq_a<T>(j); });
  auto d2 = detail::descend_1d(x.x2, k, [](int j) { return seq_b<T>(j); });
  if (d1.depth < k || d2.depth < k) return std::nullopt;
  return CellAddress(SignCode(d1.signs), SignCode(d2.signs));
}

/// Image center (u_beta, v_alpha) of the cell P_{alpha,beta}.
template <class T>
Point2<T> image_center(const CellAddress& c) {
  return {code_point<T>(c.beta).first, code_point<T>(c.alpha).second};
}

/// Governing cell of x for f_k without materializing the codes: the deepest
/// level, the cell center (u_alpha, v_beta) and the image center (u_beta, v_alpha).
template <class T>
struct CellFrame {
  int level = 0;
  Point2<T> center;
  Point2<T> image;
};

template <class T>
CellFrame<T> cell_frame(const Point2<T>& x, int kmax) {
  require_level(kmax);
  CellFrame<T> fr;
  fr.center = {T(0), T(0)};
  fr.image = {T(0), T(0)};
  for (int j = 1; j <= kmax; ++j) {
    const T w = pow2<T>(-j);
    const T sa = w * seq_a<T>(j), sb = w * seq_b<T>(j);
    // Same tie rule as descend_1d: a point on the center goes to the -1 child.
    const int s1 = x.x1 > fr.center.x1 ? 1 : -1;
    const int s2 = x.x2 > fr.center.x2 ? 1 : -1;
    const T c1 = s1 > 0 ? T(fr.center.x1 + sa) : T(fr.center.x1 - sa);
    const T c2 = s2 > 0 ? T(fr.center.x2 + sb) : T(fr.center.x2 - sb);
    if (abs_value(T(x.x1 - c1)) > sa || abs_value(T(x.x2 - c2)) > sb) break;
    fr.center = {c1, c2};
    // alpha_j = s1 feeds v_alpha, beta_j = s2 feeds u_beta.
    fr.image = {s2 > 0 ? T(fr.image.x1 + sa) : T(fr.image.x1 - sa), s1 > 0 ? T(fr.image.x2 + sb) : T(fr.image.x2 - sb)};
    fr.level = j;
  }
  if (fr.level == 0) throw OutsideError("point outside Q_0 = [-1,1]^2");
  return fr;
}

/// Glued approximant f_k on Q_0.
template <class T>
Point2<T> f_level_eval(int k, const Point2<T>& x) {
  const auto fr = cell_frame(x, k);
  return fr.image + g_eval(fr.level, Point2<T>(x - fr.center));
}

struct EvalResult {
  Point2d value;
  int depth_used = 0;
  double error_bound = 0.0;  // sup-norm bound on |value - f(x)|
};

/// Limit map f through its approximant f_depth, with a certified error bound.
EvalResult f_limit_eval(const Point2d& x, int depth);

/// Sup-norm diameter of a level-k cell, 2^{1-k} max(a_k, b_k).
double cell_sup_diameter(int k);

}  // namespace bvhomeo
