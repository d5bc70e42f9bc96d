#include "bvhomeo/graph_measure.hpp"

#include "bvhomeo/cantor.hpp"
#include "bvhomeo/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bvhomeo {

double MuVector::norm() const {
  double s = 0;
  for (double c : components()) s += c * c;
  return std::sqrt(s);
}

double MuVector::max_abs() const {
  double m = 0;
  for (double c : components()) m = std::max(m, std::abs(c));
  return m;
}

MuVector& MuVector::operator+=(const MuVector& o) {
  mu12 += o.mu12;
  mu_up12 += o.mu_up12;
  mu_1_1 += o.mu_1_1;
  mu_1_2 += o.mu_1_2;
  mu_2_1 += o.mu_2_1;
  mu_2_2 += o.mu_2_2;
  return *this;
}

MuVector MuVector::scaled(double s) const {
  MuVector m = *this;
  m.mu12 *= s;
  m.mu_up12 *= s;
  m.mu_1_1 *= s;
  m.mu_1_2 *= s;
  m.mu_2_1 *= s;
  m.mu_2_2 *= s;
  return m;
}

namespace {

Rect2d root_for(const PlanarMap& f, const Rect2d& r) { return f.domain.contains(r) ? f.domain : r; }

double diameter(const Rect2d& r) { return std::hypot(r.width(), r.height()); }

// Pointwise density of mu with respect to Lebesgue measure on the domain.
MuVector density(const Mat2d& d) {
  MuVector v;
  v.mu12 = 1;
  v.mu_up12 = d.det();
  v.mu_1_1 = d.m12;
  v.mu_1_2 = d.m22;
  v.mu_2_1 = -d.m11;
  v.mu_2_2 = -d.m21;
  return v;
}

}  // namespace

MuVector mu_on_cell(const PlanarMap& f, const Rect2d& E, MuRoute route, const DegreeOptions& opts) {
  if (!f.has_jacobian()) throw std::invalid_argument("mu_on_cell: map has no gradient");
  if (!f.domain.contains(E)) throw std::invalid_argument("mu_on_cell: cell leaves the domain");
  const Rect2d root = root_for(f, E);
  auto integral = [&](auto&& entry) {
    return integrate([&](const Point2d& x) { return entry(f.gradient(x)); }, E, root, opts.quad, f.smooth_on).value;
  };
  MuVector m;
  m.window = "cell";
  m.mu12 = E.area();
  m.mu_1_1 = integral([](const Mat2d& d) { return d.m12; });
  m.mu_1_2 = integral([](const Mat2d& d) { return d.m22; });
  m.mu_2_1 = integral([](const Mat2d& d) { return -d.m11; });
  m.mu_2_2 = integral([](const Mat2d& d) { return -d.m21; });
  m.mu_up12 = route == MuRoute::raster ? image_area(f, E, opts.grid_n, opts.leaf_samples).area
                                       : integral([](const Mat2d& d) { return d.det(); });
  return m;
}

MuVector mu_on_cell(int k, const Rect2d& E, MuRoute route, const DegreeOptions& opts) {
  return mu_on_cell(level_map(k), E, route, opts);
}

WindowMeasure window_measure(const PlanarMap& f, const Point2d& x0, double rx, const Point2d& y0, double ry,
                             const WindowOptions& opts) {
  if (!(rx > 0) || !(ry > 0)) throw std::invalid_argument("window_measure: radii must be positive");
  if (opts.partition < 0 || opts.samples < 1) throw std::invalid_argument("window_measure: bad partition");
  const bool per_sample = opts.partition == 0;
  const int n = per_sample ? 1 : opts.partition;
  const double cell = 2 * rx / n;
  auto count = [&](double step) {
    const double c = step > 0 ? std::ceil(cell / step) : 0.0;
    if (c > 1e6) throw std::invalid_argument("window_measure: sample step too small");
    return std::max(opts.samples, static_cast<int>(c));
  };
  const int s1 = count(opts.step_x1), s2 = count(opts.step_x2);
  const double h1 = cell / s1, h2 = cell / s2, da = h1 * h2;
  auto in_y = [&](const Point2d& y) {
    const double d1 = y.x1 - y0.x1, d2 = y.x2 - y0.x2;
    if (opts.y_shape == WindowShape::square) return std::abs(d1) <= ry && std::abs(d2) <= ry;
    return d1 * d1 + d2 * d2 <= ry * ry;
  };
  struct Strip {
    MuVector total;
    double variation = 0;
  };
  // One task per column of samples in per-sample mode, per column of cells otherwise.
  const int columns = per_sample ? s1 : n;
  const auto strips = parallel_map<Strip>(static_cast<std::size_t>(columns), [&](std::size_t col) {
    Strip st;
    const int ci = per_sample ? 0 : static_cast<int>(col);
    const int a0 = per_sample ? static_cast<int>(col) : 0, a1 = per_sample ? a0 + 1 : s1;
    for (int cj = 0; cj < n; ++cj) {
      MuVector c;
      for (int a = a0; a < a1; ++a)
        for (int b = 0; b < s2; ++b) {
          const Point2d x{x0.x1 - rx + ci * cell + (a + 0.5) * h1, x0.x2 - rx + cj * cell + (b + 0.5) * h2};
          if (std::hypot(x.x1 - x0.x1, x.x2 - x0.x2) > rx || !rect_contains(f.domain, x, true)) continue;
          if (!in_y(f(x))) continue;
          const MuVector v = density(f.gradient(x)).scaled(da);
          if (per_sample) st.variation += v.norm();
          c += v;
        }
      st.total += c;
      if (!per_sample) st.variation += c.norm();
    }
    return st;
  });
  WindowMeasure w;
  w.total.window = "B(x0," + std::to_string(rx) + ") x " + (opts.y_shape == WindowShape::ball ? "B" : "Sq") +
                   "(y0," + std::to_string(ry) + ")";
  for (const auto& st : strips) {
    w.total += st.total;
    w.variation_lower += st.variation;
  }
  w.x_area = w.total.mu12;
  return w;
}

double fundamental_ratio(const PlanarMap& f, const Point2d& x0, double r, const WindowOptions& opts) {
  if (!(r > 0)) throw std::invalid_argument("fundamental_ratio: radius must be positive");
  if (!(x0.x1 - r > f.domain.lo.x1 && x0.x1 + r < f.domain.hi.x1 && x0.x2 - r > f.domain.lo.x2 &&
        x0.x2 + r < f.domain.hi.x2))
    throw std::invalid_argument("fundamental_ratio: window escapes the domain");
  WindowOptions o = opts;
  o.y_shape = WindowShape::ball;
  return window_measure(f, x0, r, f(x0), r, o).variation_lower / (r * r);
}

double fundamental_ratio(int k, const Point2d& x0, double r, const WindowOptions& opts) {
  return fundamental_ratio(level_map(k, Orientation::sense_preserving), x0, r, opts);
}

double AdjugateCheck::max_residual() const {
  double m = 0;
  for (const auto& e : entries) m = std::max(m, e.residual);
  return m;
}

AdjugateCheck inverse_gradient_check(const PlanarMap& f, const Rect2d& U, const DegreeOptions& opts) {
  if (!f.has_jacobian() || !f.inverse || !f.inverse_gradient)
    throw std::invalid_argument("inverse_gradient_check: map needs gradient, inverse and inverse gradient");
  const ImageBoundary bd(f, rectangle_curve(U), diameter(U) / 512);
  Rect2d box;
  {
    const Rect2d b = bd.bounding_box();
    const Point2d pad{2 * bd.slack(), 2 * bd.slack()};
    const Rect2d padded(b.lo - pad, b.hi + pad);
    if (!rect_intersect(padded, f.domain, box)) throw std::logic_error("inverse_gradient_check: empty image");
  }
  auto in_U = [&](const Point2d& y) {
    try {
      return rect_contains(U, f.inverse(y), true);
    } catch (const OutsideError&) {
      return false;
    }
  };
  const CellClassifier y_kind = [&](const Rect2d& c) {
    if (!bd.clear_of(c.center(), diameter(c) / 2)) return CellKind::mixed;
    if (!in_U(c.center())) return CellKind::zero;
    return f.inverse_smooth_on ? f.inverse_smooth_on(c) : CellKind::mixed;
  };
  AdjugateCheck out;
  for (int e = 0; e < 4; ++e) {
    auto pick = [e](const Mat2d& m) {
      switch (e) {
        case 0: return m.m11;
        case 1: return m.m12;
        case 2: return m.m21;
        default: return m.m22;
      }
    };
    const auto lhs = integrate(
        [&](const Point2d& y) { return in_U(y) ? pick(f.inverse_gradient(y)) : 0.0; }, box, root_for(f, box),
        opts.quad, y_kind);
    const auto rhs = integrate([&](const Point2d& x) { return pick(f.gradient(x).adj()); }, U, root_for(f, U),
                               opts.quad, f.smooth_on);
    auto& r = out.entries[static_cast<std::size_t>(e)];
    r.lhs = lhs.value;
    r.rhs = rhs.value;
    r.residual = std::abs(r.lhs - r.rhs);
    r.error_estimate = lhs.error + rhs.error;
  }
  return out;
}

std::vector<double> BlowupProfile::kappa12() const {
  std::vector<double> v;
  for (const auto& k : kappa) v.push_back(k.mu12);
  return v;
}

std::vector<double> BlowupProfile::kappa_up12() const {
  std::vector<double> v;
  for (const auto& k : kappa) v.push_back(k.mu_up12);
  return v;
}

BlowupProfile blowup_profile(const PlanarMap& f, const Point2d& x0, const std::vector<double>& scales,
                             const WindowOptions& opts) {
  BlowupProfile p;
  p.x0 = x0;
  p.y0 = f(x0);
  WindowOptions o = opts;
  o.y_shape = WindowShape::square;
  for (double r : scales) {
    const auto w = window_measure(f, x0, r, p.y0, r, o);
    if (!(w.variation_lower > 0)) throw std::runtime_error("blowup_profile: empty window");
    const MuVector k = w.total.scaled(1 / w.variation_lower);
    p.scales.push_back(r);
    p.kappa.push_back(k);
    p.variation.push_back(w.variation_lower);
    p.block_det.push_back(k.mu_1_1 * k.mu_2_2 - k.mu_1_2 * k.mu_2_1);
  }
  return p;
}

BlowupProfile blowup_profile(int k, const SignCode& alpha, const SignCode& beta, int jmax,
                             const WindowOptions& opts) {
  if (jmax < 1) throw std::invalid_argument("blowup_profile: need at least one scale");
  if (k < jmax) throw std::invalid_argument("blowup_profile: level must be at least the finest scale index");
  const Point2d x0{code_point<double>(alpha).first, code_point<double>(beta).second};
  std::vector<double> scales;
  for (int j = 1; j <= jmax; ++j) scales.push_back(pow2<double>(-j));
  return blowup_profile(level_map(k, Orientation::sense_preserving), x0, scales, opts);
}

WindowOptions level_window_options(int k) {
  require_level(k);
  WindowOptions o;
  o.partition = 0;
  o.samples = 1;
  o.step_x1 = pow2<double>(-(k + 3));
  o.step_x2 = pow2<double>(-(2 * k + 1));
  o.y_shape = WindowShape::square;
  return o;
}

BlowupProfile blowup_profile(int k, const SignCode& alpha, const SignCode& beta, int jmax) {
  return blowup_profile(k, alpha, beta, jmax, level_window_options(k));
}

const char* slot_name(FormSlot s) {
  switch (s) {
    case FormSlot::dx1: return "dx1";
    case FormSlot::dx2: return "dx2";
    case FormSlot::dy1: return "dy1";
    case FormSlot::dy2: return "dy2";
  }
  return "?";
}

BoundarylessResult boundaryless_residual(const PlanarMap& f, const TestFunction& eta, const TestFunction& phi,
                                         FormSlot slot, const QuadOptions& opts) {
  if (!f.has_jacobian()) throw std::invalid_argument("boundaryless_residual: map has no gradient");
  if (eta.is_constant || !f.domain.contains(eta.support()))
    throw std::invalid_argument("boundaryless_residual: eta must be supported inside the domain");
  if (!phi.is_constant && !f.domain.contains(phi.support()))
    throw std::invalid_argument("boundaryless_residual: phi must be supported inside the domain");
  const Rect2d xs = eta.support();
  const Rect2d xroot = root_for(f, xs);
  auto x_term = [&](auto&& density) {
    return integrate(
        [&](const Point2d& x) {
          const Point2d y = f(x);
          return density(x, y, f.gradient(x));
        },
        xs, xroot, opts, f.smooth_on);
  };
  BoundarylessResult out;
  auto add = [&](const QuadResult& q, double sign) {
    out.terms.push_back(sign * q.value);
    out.residual += sign * q.value;
    out.error_estimate += q.error;
  };
  switch (slot) {
    case FormSlot::dx1:
    case FormSlot::dx2: {
      // d/dx_i of eta(x) phi(f(x)), split into its three pieces.
      const bool second = slot == FormSlot::dx1;
      const double sign = second ? -1 : 1;
      add(x_term([&](const Point2d& x, const Point2d& y, const Mat2d&) {
            const Point2d g = eta.gradient(x);
            return (second ? g.x2 : g.x1) * phi(y);
          }),
          sign);
      add(x_term([&](const Point2d& x, const Point2d& y, const Mat2d& d) {
            return (second ? d.m12 : d.m11) * eta(x) * phi.gradient(y).x1;
          }),
          sign);
      add(x_term([&](const Point2d& x, const Point2d& y, const Mat2d& d) {
            return (second ? d.m22 : d.m21) * eta(x) * phi.gradient(y).x2;
          }),
          sign);
      break;
    }
    case FormSlot::dy1:
    case FormSlot::dy2: {
      if (!f.inverse) throw std::invalid_argument("boundaryless_residual: dy slots need the inverse");
      const bool first = slot == FormSlot::dy1;
      add(x_term([&](const Point2d& x, const Point2d& y, const Mat2d& d) {
            const Point2d g = eta.gradient(x);
            return first ? phi(y) * (g.x1 * d.m12 - g.x2 * d.m11) : phi(y) * (g.x1 * d.m22 - g.x2 * d.m21);
          }),
          1);
      if (!phi.is_constant) {
        const Rect2d ys = phi.support();
        const auto q = integrate(
            [&](const Point2d& y) {
              const Point2d g = phi.gradient(y);
              return eta(f.inverse(y)) * (first ? g.x2 : g.x1);
            },
            ys, root_for(f, ys), opts, f.inverse_smooth_on);
        add(q, first ? -1 : 1);
      }
      break;
    }
  }
  return out;
}

double graph_mass_proxy(const PlanarMap& f, int n, int samples) {
  if (n < 1 || samples < 1) throw std::invalid_argument("graph_mass_proxy: bad partition");
  const Rect2d D = f.domain;
  const double w = D.width() / n, h = D.height() / n;
  const double da = (w / samples) * (h / samples);
  const auto rows = parallel_map<double>(static_cast<std::size_t>(n), [&](std::size_t i) {
    double sum = 0;
    for (int j = 0; j < n; ++j) {
      MuVector c;
      for (int a = 0; a < samples; ++a)
        for (int b = 0; b < samples; ++b) {
          const Point2d x{D.lo.x1 + w * (static_cast<double>(i) + (a + 0.5) / samples),
                          D.lo.x2 + h * (j + (b + 0.5) / samples)};
          c += density(f.gradient(x)).scaled(da);
        }
      sum += c.norm();
    }
    return sum;
  });
  double total = 0;
  for (double r : rows) total += r;
  return total;
}

}  // namespace bvhomeo
