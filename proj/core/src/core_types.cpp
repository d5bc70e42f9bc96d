#include "bvhomeo/core_types.hpp"

#include <cmath>
#include <limits>

namespace bvhomeo {

Rational to_rational(double v) {
  if (!std::isfinite(v)) throw std::domain_error("to_rational: non-finite value");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(v, &exp);  // v = mant * 2^exp, 0.5 <= |mant| < 1
  constexpr int kBits = std::numeric_limits<double>::digits;
  auto scaled = static_cast<long long>(std::ldexp(mant, kBits));
  return Rational(BigInt(scaled)) * pow2<Rational>(exp - kBits);
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

SignCode::SignCode(std::vector<int> signs) {
  signs_.reserve(signs.size());
  for (int s : signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("SignCode: entries must be -1 or +1");
    signs_.push_back(static_cast<int8_t>(s));
  }
}

SignCode SignCode::prefix(std::size_t n) const {
  if (n > signs_.size()) throw std::out_of_range("SignCode::prefix");
  SignCode out;
  out.signs_.assign(signs_.begin(), signs_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

SignCode SignCode::appended(int s) const {
  if (s != 1 && s != -1) throw std::invalid_argument("SignCode: entries must be -1 or +1");
  SignCode out = *this;
  out.signs_.push_back(static_cast<int8_t>(s));
  return out;
}

SignCode SignCode::negated() const {
  SignCode out = *this;
  for (auto& s : out.signs_) s = static_cast<int8_t>(-s);
  return out;
}

std::vector<SignCode> SignCode::all(int k) {
  if (k < 0 || k > 24) throw std::invalid_argument("SignCode::all: length out of range");
  std::vector<SignCode> out;
  out.reserve(std::size_t{1} << k);
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << k); ++bits) {
    SignCode c;
    c.signs_.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) c.signs_[static_cast<std::size_t>(j)] = (bits >> (k - 1 - j)) & 1u ? 1 : -1;
    out.push_back(std::move(c));
  }
  return out;
}

SignCode SignCode::constant(int k, int s) { return SignCode(std::vector<int>(static_cast<std::size_t>(k), s)); }

std::string SignCode::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    if (i) out += ',';
    out += signs_[i] > 0 ? "1" : "-1";
  }
  return out + ")";
}

}  // namespace bvhomeo
