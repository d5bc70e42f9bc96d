#pragma once

// Independent GMP implementation of the construction, used as the reference in
// the unit tests. It shares no code with the library: cells are found by brute
// force over all codes and g_j uses t = min(1, xi, eta) instead of region tags.

#include "bvhomeo/core_types.hpp"

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace oracle {

using Q = mpq_class;

inline Q pow2(int e) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? Q(mpz_class(1), p) : Q(p);
}

inline Q a(int k) { return (1 + pow2(1 - k)) / 2; }
inline Q b(int k) { return pow2(1 - k); }

struct P2 {
  Q x1, x2;
};

inline Q abs(const Q& q) { return q < 0 ? Q(-q) : q; }

inline Q code_u(const std::vector<int>& s) {
  Q u = 0;
  for (std::size_t i = 0; i < s.size(); ++i) u += pow2(-static_cast<int>(i) - 1) * s[i] * a(static_cast<int>(i) + 1);
  return u;
}
inline Q code_v(const std::vector<int>& s) {
  Q v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) v += pow2(-static_cast<int>(i) - 1) * s[i] * b(static_cast<int>(i) + 1);
  return v;
}

/// All sign vectors of length k.
inline std::vector<std::vector<int>> codes(int k) {
  std::vector<std::vector<int>> out;
  for (unsigned m = 0; m < (1u << k); ++m) {
    std::vector<int> s(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = (m >> (k - 1 - i)) & 1 ? 1 : -1;
    out.push_back(s);
  }
  return out;
}

struct Cell {
  int level;
  std::vector<int> alpha, beta;
};

/// Some level-j cell (deepest j <= k) whose closed P rectangle holds x.
inline std::optional<Cell> find_cell(const P2& x, int k) {
  for (int j = k; j >= 1; --j) {
    const Q ha = pow2(-j) * a(j), hb = pow2(-j) * b(j);
    for (const auto& al : codes(j)) {
      if (abs(x.x1 - code_u(al)) > ha) continue;
      for (const auto& be : codes(j))
        if (abs(x.x2 - code_v(be)) <= hb) return Cell{j, al, be};
    }
  }
  return std::nullopt;
}

/// g_j(z) for z in P_j.
inline P2 g(int j, const P2& z) {
  const Q X1 = pow2(j) * abs(z.x1), X2 = pow2(j) * abs(z.x2);
  const Q xi = (a(j) - X1) / (a(j) - a(j + 1));
  const Q eta = (b(j) - X2) / (b(j) - b(j + 1));
  Q t = 1;
  if (xi < t) t = xi;
  if (eta < t) t = eta;
  const Q num = a(j) + t * (a(j + 1) - a(j));
  const Q den = b(j) + t * (b(j + 1) - b(j));
  return {num / den * z.x2, den / num * z.x1};
}

/// f_k(x) on [-1,1]^2.
inline P2 f(int k, const P2& x) {
  const auto c = find_cell(x, k);
  if (!c) return x;  // not reached for points of Q_0
  const P2 z{x.x1 - code_u(c->alpha), x.x2 - code_v(c->beta)};
  const P2 w = g(c->level, z);
  return {code_u(c->beta) + w.x1, code_v(c->alpha) + w.x2};
}

inline Q from(const bvhomeo::Rational& r) {
  return Q(mpz_class(numerator(r).str()), mpz_class(denominator(r).str()));
}

inline bool same(const bvhomeo::Rational& r, const Q& q) { return from(r) == q; }

}  // namespace oracle
