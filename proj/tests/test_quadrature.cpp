#include "bvhomeo/quadrature.hpp"
#include "bvhomeo/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bvhomeo;

TEST_CASE("Gauss rules integrate polynomials of degree 2n-1 exactly") {
  for (int n = 2; n <= 8; ++n) {
    const auto& g = gauss_rule(n);
    REQUIRE(g.nodes.size() == static_cast<std::size_t>(n));
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double sum = 0;
      for (int i = 0; i < n; ++i) sum += g.weights[i] * std::pow(g.nodes[i], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("tensor rule on a rectangle") {
  const Rect2d r({0.5, -1}, {2, 0.25});
  // int x^3 y^2 = [x^4/4] [y^3/3]
  const double exact = (std::pow(2, 4) - std::pow(0.5, 4)) / 4 * (std::pow(0.25, 3) + 1) / 3;
  CHECK(gauss_rect([](const Point2d& p) { return p.x1 * p.x1 * p.x1 * p.x2 * p.x2; }, r, 3) ==
        doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("adaptive integration of smooth functions") {
  const auto q = integrate([](const Point2d& p) { return std::exp(p.x1) * std::cos(p.x2); }, unit_box(), {1e-9});
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx((std::exp(1) - std::exp(-1)) * 2 * std::sin(1.0)).epsilon(1e-9));
  // A peaked integrand forces local refinement.
  const auto peak = integrate([](const Point2d& p) { return 1.0 / (1e-3 + p.x1 * p.x1 + p.x2 * p.x2); },
                              Rect2d({0, 0}, {1, 1}), {1e-6});
  const auto ref = integrate_1d(
      [](double t) {
        // Inner integral over x2 in closed form: atan(1/sqrt(c)) / sqrt(c), c = 1e-3 + t^2.
        const double c = 1e-3 + t * t;
        return std::atan(1 / std::sqrt(c)) / std::sqrt(c);
      },
      0, 1, 1e-12);
  CHECK(peak.value == doctest::Approx(ref.value).epsilon(1e-5));
}

TEST_CASE("classifier keeps discontinuities on cell edges") {
  // Indicator of a disk: the exact area needs every boundary cell resolved.
  const double r = 0.6;
  auto ind = [r](const Point2d& p) { return p.x1 * p.x1 + p.x2 * p.x2 <= r * r ? 1.0 : 0.0; };
  auto cls = [r](const Rect2d& c) {
    double nearest = std::hypot(std::clamp(0.0, c.lo.x1, c.hi.x1), std::clamp(0.0, c.lo.x2, c.hi.x2));
    double farthest = std::hypot(std::max(std::abs(c.lo.x1), std::abs(c.hi.x1)),
                                 std::max(std::abs(c.lo.x2), std::abs(c.hi.x2)));
    if (farthest <= r) return CellKind::smooth;
    if (nearest >= r) return CellKind::zero;
    return CellKind::mixed;
  };
  QuadOptions o;
  o.max_mixed_depth = 10;
  const auto q = integrate(ind, unit_box(), o, cls);
  CHECK(q.value == doctest::Approx(std::numbers::pi * r * r).epsilon(2e-4));
  CHECK(q.mixed_leaves > 0);

  // Axis-aligned step at a dyadic coordinate is integrated exactly.
  auto step = [](const Point2d& p) { return p.x1 < 0.25 ? 2.0 : -1.0; };
  auto step_cls = [](const Rect2d& c) { return c.hi.x1 <= 0.25 || c.lo.x1 >= 0.25 ? CellKind::smooth : CellKind::mixed; };
  CHECK(integrate(step, unit_box(), {}, step_cls).value == doctest::Approx(2 * 1.25 * 2 - 0.75 * 2).epsilon(1e-12));
}

TEST_CASE("integration over a sub-rectangle with a separate root") {
  const Rect2d dom({-0.3, 0.1}, {0.7, 0.35});
  const auto q = integrate([](const Point2d& p) { return p.x1 + 2 * p.x2; }, dom, unit_box(), {}, {});
  CHECK(q.value == doctest::Approx(dom.area() * (dom.center().x1 + 2 * dom.center().x2)).epsilon(1e-12));
}

TEST_CASE("one-dimensional adaptive rule") {
  CHECK(integrate_1d([](double t) { return std::sqrt(t); }, 0, 1, 1e-10).value == doctest::Approx(2.0 / 3).epsilon(1e-9));
  CHECK(integrate_1d([](double t) { return std::sin(t); }, 0, std::numbers::pi).value == doctest::Approx(2).epsilon(1e-12));
}

TEST_CASE("quadrature is additive over a random split") {
  Sampler s(8);
  auto f = [](const Point2d& p) { return std::sin(3 * p.x1) * p.x2 * p.x2 + 1; };
  for (int i = 0; i < 20; ++i) {
    const double c = s.uniform(-0.9, 0.9);
    const auto left = integrate(f, Rect2d({-1, -1}, {c, 1}), {1e-10});
    const auto right = integrate(f, Rect2d({c, -1}, {1, 1}), {1e-10});
    CHECK(left.value + right.value == doctest::Approx(integrate(f, unit_box(), {1e-10}).value).epsilon(1e-9));
  }
}
