#pragma once

// Planar primitives shared by every module. All types are templated on the
// scalar so the same code runs exactly (Rational) or in double precision.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvhomeo {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class NumericMode { exact, floating };

/// 2^e as an exact value of the scalar type.
template <class T>
T pow2(int e);

template <>
inline double pow2<double>(int e) {
  return std::ldexp(1.0, e);
}

template <>
inline Rational pow2<Rational>(int e) {
  if (e >= 0) return Rational(BigInt(1) << e);
  return Rational(BigInt(1), BigInt(1) << -e);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double v) { return v; }

/// Exact rational value of a finite double.
Rational to_rational(double v);

std::string to_string(const Rational& q);

template <class T>
T abs_value(const T& v) {
  return v < T(0) ? T(-v) : v;
}

template <class T>
int sign_of(const T& v) {
  return v > T(0) ? 1 : (v < T(0) ? -1 : 0);
}

template <class T>
struct Point2 {
  T x1{};
  T x2{};

  friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend Point2 operator*(const T& s, const Point2& p) { return {s * p.x1, s * p.x2}; }
  friend bool operator==(const Point2& a, const Point2& b) { return a.x1 == b.x1 && a.x2 == b.x2; }
  friend std::ostream& operator<<(std::ostream& os, const Point2& p) {
    return os << '(' << p.x1 << ", " << p.x2 << ')';
  }
};

template <class T>
struct Mat2 {
  T m11{}, m12{}, m21{}, m22{};

  static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
  T det() const { return m11 * m22 - m12 * m21; }
  bool anti_diagonal() const { return m11 == T(0) && m22 == T(0); }
  /// Adjugate (transposed cofactor) matrix.
  Mat2 adj() const { return {m22, T(-m12), T(-m21), m11}; }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }
  friend bool operator==(const Mat2& a, const Mat2& b) {
    return a.m11 == b.m11 && a.m12 == b.m12 && a.m21 == b.m21 && a.m22 == b.m22;
  }
};

template <class T>
Point2<T> mat_apply(const Mat2<T>& m, const Point2<T>& p) {
  return {m.m11 * p.x1 + m.m12 * p.x2, m.m21 * p.x1 + m.m22 * p.x2};
}

/// Closed axis-aligned rectangle [lo.x1, hi.x1] x [lo.x2, hi.x2].
template <class T>
struct Rect2 {
  Point2<T> lo;
  Point2<T> hi;

  Rect2() = default;
  Rect2(Point2<T> lo_, Point2<T> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (hi.x1 < lo.x1 || hi.x2 < lo.x2) throw std::invalid_argument("Rect2: lo must not exceed hi");
  }
  static Rect2 centered(const Point2<T>& c, const T& half1, const T& half2) {
    return Rect2({c.x1 - half1, c.x2 - half2}, {c.x1 + half1, c.x2 + half2});
  }

  T width() const { return hi.x1 - lo.x1; }
  T height() const { return hi.x2 - lo.x2; }
  T area() const { return width() * height(); }
  Point2<T> center() const { return {(lo.x1 + hi.x1) / 2, (lo.x2 + hi.x2) / 2}; }
  bool contains(const Rect2& r) const {
    return lo.x1 <= r.lo.x1 && r.hi.x1 <= hi.x1 && lo.x2 <= r.lo.x2 && r.hi.x2 <= hi.x2;
  }

  friend bool operator==(const Rect2& a, const Rect2& b) { return a.lo == b.lo && a.hi == b.hi; }
};

template <class T>
bool rect_contains(const Rect2<T>& r, const Point2<T>& p, bool closed) {
  if (closed) return r.lo.x1 <= p.x1 && p.x1 <= r.hi.x1 && r.lo.x2 <= p.x2 && p.x2 <= r.hi.x2;
  return r.lo.x1 < p.x1 && p.x1 < r.hi.x1 && r.lo.x2 < p.x2 && p.x2 < r.hi.x2;
}

/// Intersection of two closed rectangles, empty result signalled by false.
template <class T>
bool rect_intersect(const Rect2<T>& a, const Rect2<T>& b, Rect2<T>& out) {
  using std::max;
  using std::min;
  Point2<T> lo{max(a.lo.x1, b.lo.x1), max(a.lo.x2, b.lo.x2)};
  Point2<T> hi{min(a.hi.x1, b.hi.x1), min(a.hi.x2, b.hi.x2)};
  if (hi.x1 < lo.x1 || hi.x2 < lo.x2) return false;
  out = Rect2<T>(lo, hi);
  return true;
}

using Point2d = Point2<double>;
using Point2q = Point2<Rational>;
using Mat2d = Mat2<double>;
using Mat2q = Mat2<Rational>;
using Rect2d = Rect2<double>;
using Rect2q = Rect2<Rational>;

template <class T>
Point2d to_double(const Point2<T>& p) {
  return {to_double(p.x1), to_double(p.x2)};
}
template <class T>
Rect2d to_double(const Rect2<T>& r) {
  return Rect2d(to_double(r.lo), to_double(r.hi));
}
template <class T>
Mat2d to_double(const Mat2<T>& m) {
  return {to_double(m.m11), to_double(m.m12), to_double(m.m21), to_double(m.m22)};
}

inline double sup_distance(const Point2d& a, const Point2d& b) {
  return std::max(std::abs(a.x1 - b.x1), std::abs(a.x2 - b.x2));
}
inline double euclid_distance(const Point2d& a, const Point2d& b) {
  return std::hypot(a.x1 - b.x1, a.x2 - b.x2);
}

/// Finite sign sequence alpha in {-1, +1}^k addressing a Cantor cell.
class SignCode {
 public:
  SignCode() = default;
  explicit SignCode(std::vector<int> signs);
  SignCode(std::initializer_list<int> signs) : SignCode(std::vector<int>(signs)) {}

  std::size_t size() const { return signs_.size(); }
  bool empty() const { return signs_.empty(); }
  int operator[](std::size_t i) const { return signs_[i]; }
  const std::vector<int8_t>& signs() const { return signs_; }

  SignCode prefix(std::size_t n) const;
  SignCode appended(int s) const;
  SignCode negated() const;

  /// All 2^k codes of length k, in lexicographic order with -1 < +1.
  static std::vector<SignCode> all(int k);
  /// Constant code (s, s, ..., s) of length k.
  static SignCode constant(int k, int s);

  std::string str() const;

  friend auto operator<=>(const SignCode&, const SignCode&) = default;

 private:
  std::vector<int8_t> signs_;
};

}  // namespace bvhomeo
