#include "oracle.hpp"

#include "bvhomeo/derivative.hpp"
#include "bvhomeo/planar_map.hpp"
#include "bvhomeo/sampling.hpp"

#include <doctest.h>

using namespace bvhomeo;

namespace {

Mat2d fd_gradient(const std::function<Point2d(const Point2d&)>& f, const Point2d& x, double h) {
  const Point2d d1 = f({x.x1 + h, x.x2}) - f({x.x1 - h, x.x2});
  const Point2d d2 = f({x.x1, x.x2 + h}) - f({x.x1, x.x2 - h});
  return {d1.x1 / (2 * h), d2.x1 / (2 * h), d1.x2 / (2 * h), d2.x2 / (2 * h)};
}

double max_diff(const Mat2d& a, const Mat2d& b) {
  return std::max({std::abs(a.m11 - b.m11), std::abs(a.m12 - b.m12), std::abs(a.m21 - b.m21), std::abs(a.m22 - b.m22)});
}

}  // namespace

TEST_CASE("matrix norms") {
  const auto n = norms(Mat2d{3, 4, 0, 0});
  CHECK(n.max_entry == 4);
  CHECK(n.row_max == doctest::Approx(5));
  CHECK(n.frobenius == doctest::Approx(5));
  CHECK(n.operator2 == doctest::Approx(5));
  const auto d = norms(Mat2d{1, 0, 0, -2});
  CHECK(d.operator2 == doctest::Approx(2));
  CHECK(d.row_max == doctest::Approx(2));
  CHECK(d.frobenius == doctest::Approx(std::sqrt(5.0)));
  // Random matrices: operator norm sits between row_max and frobenius.
  Sampler s(1);
  for (int i = 0; i < 500; ++i) {
    const Mat2d m{s.uniform(-3, 3), s.uniform(-3, 3), s.uniform(-3, 3), s.uniform(-3, 3)};
    const auto r = norms(m);
    CHECK(r.row_max <= r.operator2 + 1e-12);
    CHECK(r.operator2 <= r.frobenius + 1e-12);
    CHECK(r.max_entry <= r.row_max + 1e-12);
  }
}

TEST_CASE("f_k gradient matches central differences off the seams") {
  Sampler s(2);
  for (int k = 1; k <= 5; ++k) {
    int compared = 0;
    for (int i = 0; i < 2000; ++i) {
      const Point2d x = s.point(Rect2d({-0.999, -0.999}, {0.999, 0.999}));
      auto f = [k](const Point2d& p) { return f_level_eval(k, p); };
      const double h = 1e-6 * std::ldexp(1.0, -2 * k);
      const Mat2d fd = fd_gradient(f, x, h), fd2 = fd_gradient(f, x, h / 2);
      // A seam inside the stencil shows up as disagreement between the two steps.
      if (max_diff(fd, fd2) > 1e-4 * (1 + norms(fd).max_entry)) continue;
      const auto g = f_grad(k, x);
      CHECK(max_diff(g.grad, fd) <= 1e-4 * (1 + norms(fd).max_entry));
      CHECK(g.jac == doctest::Approx(g.grad.det()));
      ++compared;
    }
    CHECK(compared > 1900);
  }
}

TEST_CASE("the construction map reverses orientation, the swapped map preserves it") {
  Sampler s(3);
  for (int k = 1; k <= 6; ++k) {
    const PlanarMap F = level_map(k, Orientation::sense_preserving);
    for (int i = 0; i < 500; ++i) {
      const Point2d x = s.point(unit_box());
      CHECK(f_grad(k, x).jac < 0);
      CHECK(F.jacobian(x) > 0);
    }
  }
}

TEST_CASE("gradient on a seam follows the policy") {
  const Point2d seam{7.0 / 16, 3.0 / 8};  // A/B seam of g_1
  CHECK_THROWS_AS(g_grad(1, seam), SeamError);
  CHECK_NOTHROW(g_grad(1, seam, SeamPolicy::lenient));
  CHECK_THROWS_AS(g_grad(1, Point2d{0.75, 0}), OutsideError);
}

TEST_CASE("sampled Lipschitz quotients stay below the certified bound") {
  Sampler s(4);
  for (int k = 1; k <= 6; ++k) {
    const double L = level_lipschitz(k);
    double worst = 0;
    for (int i = 0; i < 5000; ++i) {
      const Point2d x = s.point(Rect2d({-0.99, -0.99}, {0.99, 0.99}));
      const double r = std::ldexp(1.0, -static_cast<int>(s.bits() % (2 * k + 6)));
      const Point2d y{x.x1 + r * s.uniform(-1, 1), x.x2 + r * s.uniform(-1, 1)};
      if (!rect_contains(unit_box(), y, true)) continue;
      const double d = euclid_distance(x, y);
      if (d == 0) continue;
      worst = std::max(worst, euclid_distance(f_level_eval(k, x), f_level_eval(k, y)) / d);
    }
    CHECK(worst <= L);
    CHECK(worst >= L / 64);  // the bound is not absurdly loose
  }
}

TEST_CASE("smooth cells carry a single branch") {
  Sampler s(5);
  for (int k = 1; k <= 4; ++k) {
    int smooth = 0;
    for (int i = 0; i < 400; ++i) {
      const double w = std::ldexp(1.0, -static_cast<int>(2 + s.bits() % (2 * k + 2)));
      const Rect2d r = s.rect(unit_box(), w, w);
      if (f_piece_kind(k, r) != CellKind::smooth) continue;
      ++smooth;
      const auto f0 = cell_frame(r.center(), k);
      const auto t0 = f_grad(k, r.center(), SeamPolicy::lenient).tag.tag;
      for (int j = 0; j < 8; ++j) {
        const Point2d x = s.point(r);
        CHECK(cell_frame(x, k).center == f0.center);
        CHECK(f_grad(k, x, SeamPolicy::lenient).tag.tag == t0);
      }
    }
    CHECK(smooth > 50);
  }
}

TEST_CASE("exact region integrals and areas") {
  for (int k = 1; k <= 8; ++k) {
    using oracle::Q;
    const Q a1 = oracle::a(k + 1), b1 = oracle::b(k + 1);
    const Q areaQ = 4 * oracle::pow2(-2 * k) * a1 * b1;
    const Q big = a1 / b1 > b1 / a1 ? Q(a1 / b1) : Q(b1 / a1);
    CHECK(oracle::same(tv_region_q_exact(k), areaQ * big));
    CHECK(oracle::same(tv_region_q_exact(k), oracle::pow2(2 - 2 * k) * a1 * a1));
    CHECK(oracle::same(region_area_exact(k, TVRegion::Q), areaQ));
    const Rational total =
        region_area_exact(k, TVRegion::A) + region_area_exact(k, TVRegion::B) + region_area_exact(k, TVRegion::Q);
    CHECK(oracle::same(total, 4 * oracle::pow2(-2 * k) * oracle::a(k) * oracle::b(k)));
    CHECK(oracle::same(region_area_exact(k, TVRegion::A), oracle::pow2(1 - 3 * k) * (oracle::a(k) + a1)));
    CHECK(oracle::same(region_area_exact(k, TVRegion::B), 3 * oracle::pow2(-4 * k)));
    CHECK(region_area_exact(k, TVRegion::A) <= pow2<Rational>(2 - 3 * k));
  }
}

TEST_CASE("region areas and TV integrals against a midpoint rule") {
  for (int k = 1; k <= 2; ++k) {
    const auto P = level_params<double>(k).P;
    const int n = 1200;
    const double hx = P.width() / n, hy = P.height() / n;
    double area_a = 0, tv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Point2d z{P.lo.x1 + (i + 0.5) * hx, P.lo.x2 + (j + 0.5) * hy};
        const double X1 = std::ldexp(std::abs(z.x1), k), X2 = std::ldexp(std::abs(z.x2), k);
        const double xi = (seq_a<double>(k) - X1) / (seq_a<double>(k) - seq_a<double>(k + 1));
        const double eta = (seq_b<double>(k) - X2) / (seq_b<double>(k) - seq_b<double>(k + 1));
        if (eta < xi && eta < 1) area_a += hx * hy;
        const double h = 1e-3 * std::min(hx, hy);
        tv += norms(fd_gradient([k](const Point2d& p) { return g_eval(k, p); }, z, h)).row_max * hx * hy;
      }
    CHECK(area_a == doctest::Approx(to_double(region_area_exact(k, TVRegion::A))).epsilon(3e-3));
    const double sum = tv_region(k, TVRegion::A).quad.value + tv_region(k, TVRegion::B).quad.value +
                       tv_region(k, TVRegion::Q).quad.value;
    CHECK(sum == doctest::Approx(tv).epsilon(3e-3));
  }
}

TEST_CASE("tv_total stays within its bounds for small levels") {
  for (int k = 1; k <= 4; ++k) {
    const auto r = tv_total(k);
    CHECK(r.converged);
    CHECK(r.within_bounds(1e-3));
    CHECK(r.tv_total_fk <= 20 + 1e-3);
    REQUIRE(r.shell.size() == static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) CHECK(r.shell[j] <= std::ldexp(1.0, 3 - j) + 1e-3);
    CHECK(r.q_term <= 4);
  }
  CHECK_THROWS(tv_total(9, {}, 8));
}

TEST_CASE("vertical variation witness") {
  for (int k = 1; k <= 8; ++k) {
    const double z1 = code_point<double>(SignCode::constant(k, 1)).first;
    const auto v = vertical_variation(k, z1);
    CHECK(v.length == std::ldexp(1.0, 2 - k));
    CHECK(v.variation >= 1);
  }
  CHECK_THROWS(vertical_variation(3, 0.05));
}
