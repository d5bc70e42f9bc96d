#include "oracle.hpp"

#include "bvhomeo/core_types.hpp"
#include "bvhomeo/sampling.hpp"

#include <doctest.h>

#include <set>

using namespace bvhomeo;

TEST_CASE("pow2 is exact in both scalars") {
  for (int e = -70; e <= 70; e += 7) {
    CHECK(oracle::same(pow2<Rational>(e), oracle::pow2(e)));
    CHECK(pow2<double>(e) == std::ldexp(1.0, e));
  }
}

TEST_CASE("to_rational agrees with gmp's exact double conversion") {
  Sampler s(7);
  for (int i = 0; i < 500; ++i) {
    const double v = s.uniform(-3, 3) * std::ldexp(1.0, static_cast<int>(s.bits() % 40) - 20);
    const Rational q = to_rational(v);
    CHECK(oracle::same(q, oracle::Q(v)));
    CHECK(to_double(q) == v);
  }
  CHECK(to_rational(0.0) == 0);
  CHECK(to_string(Rational(3, 4)) == "3/4");
  CHECK(to_string(Rational(-2)) == "-2");
}

TEST_CASE("rectangle invariants") {
  CHECK_THROWS_AS(Rect2d({1, 0}, {0, 1}), std::invalid_argument);
  const Rect2q r({Rational(-1, 2), 0}, {Rational(1, 4), 1});
  CHECK(r.area() == Rational(3, 4));
  CHECK(r.center() == Point2q{Rational(-1, 8), Rational(1, 2)});
  Rect2q out;
  CHECK(rect_intersect(r, Rect2q({0, 0}, {1, 1}), out));
  CHECK(out == Rect2q({0, 0}, {Rational(1, 4), 1}));
  CHECK_FALSE(rect_intersect(r, Rect2q({1, 0}, {2, 1}), out));
  CHECK(rect_contains(r, {0, 1}, true));
  CHECK_FALSE(rect_contains(r, {0, 1}, false));
}

TEST_CASE("adjugate times matrix is det times identity (random)") {
  Sampler s(11);
  for (int i = 0; i < 200; ++i) {
    const Mat2q m{to_rational(s.uniform(-2, 2)), to_rational(s.uniform(-2, 2)), to_rational(s.uniform(-2, 2)),
                  to_rational(s.uniform(-2, 2))};
    const Mat2q p = m.adj() * m;
    CHECK(p == Mat2q{m.det(), 0, 0, m.det()});
  }
}

TEST_CASE("sign codes") {
  const auto all = SignCode::all(3);
  REQUIRE(all.size() == 8);
  CHECK(all.front().str() == "(-1,-1,-1)");
  CHECK(all.back() == SignCode::constant(3, 1));
  CHECK(std::set<SignCode>(all.begin(), all.end()).size() == 8);
  CHECK(std::is_sorted(all.begin(), all.end()));
  const SignCode c{1, -1, 1};
  CHECK(c.prefix(2) == SignCode{1, -1});
  CHECK(c.appended(-1).size() == 4);
  CHECK(c.negated() == SignCode{-1, 1, -1});
  CHECK_THROWS(SignCode{1, 0});
}

TEST_CASE("sampler is reproducible and stays in range") {
  Sampler a(42), b(42);
  const Rect2d box({-1, -0.5}, {0.25, 1});
  for (int i = 0; i < 1000; ++i) {
    const Point2d p = a.point(box);
    CHECK(p == b.point(box));
    CHECK(rect_contains(box, p, true));
    const Rect2d r = a.rect(box, 0.1, 0.4);
    b.rect(box, 0.1, 0.4);
    CHECK(box.contains(r));
  }
}
