#pragma once

// Topological degree of planar maps by boundary winding, the degree formula,
// the first-coordinate auxiliary map identity, distributional Jacobians and
// the Det Df(E) = |f(E)| comparison.

#include "bvhomeo/planar_map.hpp"
#include "bvhomeo/quadrature.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace bvhomeo {

/// Closed polyline with first == last, positively oriented when validated.
struct BoundaryCurve {
  std::vector<Point2d> vertices;
  int refinement = 1;  // vertices inserted per generator edge

  double signed_area() const;
  double length() const;
  std::size_t edges() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  Rect2d bounding_box() const;
  /// Throws unless closed and (if asked) positively oriented.
  void validate(bool require_positive = true) const;
};

BoundaryCurve rectangle_curve(const Rect2d& r, int per_edge = 1);
BoundaryCurve circle_curve(const Point2d& center, double radius, int segments = 256);
/// Curve through the given points; closes it if needed. No orientation check.
BoundaryCurve polyline_curve(std::vector<Point2d> points);

struct WindingOptions {
  double tolerance = -1;  // minimum admissible |f(x) - y|; < 0 means 1e-6 * curve diameter
  int max_depth = 48;     // bisection depth per curve edge
};

struct WindingResult {
  int degree = 0;
  double turns = 0;  // total angle / 2 pi before rounding
  std::size_t evaluations = 0;
  double min_distance = 0;
};

/// Winding number of t -> map(curve(t)) around y. With a Lipschitz bound an
/// edge piece is accepted once the image ball certifiably misses y; without
/// one, once consecutive images subtend less than pi/2.
WindingResult winding_number(const PlanarMap& map, const BoundaryCurve& curve, const Point2d& y,
                             const WindingOptions& opts = {});
int winding_degree(const PlanarMap& map, const BoundaryCurve& curve, const Point2d& y,
                   const WindingOptions& opts = {});

/// Tensor bump amplitude * prod (1 - ((x_i - c_i)/r_i)^2)^3 on its box, or a constant.
struct TestFunction {
  Point2d center{0, 0};
  double r1 = 1, r2 = 1;
  double amplitude = 1;
  bool is_constant = false;

  static TestFunction bump(const Point2d& c, double r1, double r2, double amplitude = 1);
  static TestFunction constant(double value);

  double operator()(const Point2d& x) const;
  Point2d gradient(const Point2d& x) const;
  /// Closed support box (the whole plane is reported as a huge box for constants).
  Rect2d support() const;
  /// Exact integral over the plane; throws for constants.
  double integral() const;
};

/// Samples of map(curve) dense enough that every point of the true image
/// curve lies within `slack` of a sample (needs a Lipschitz bound).
class ImageBoundary {
 public:
  ImageBoundary(const PlanarMap& map, const BoundaryCurve& curve, double slack);

  double slack() const { return slack_; }
  const std::vector<Point2d>& points() const { return pts_; }
  Rect2d bounding_box() const;
  /// True when the disk B(y, r) certifiably misses the image curve.
  bool clear_of(const Point2d& y, double r) const;
  /// Winding of the sampled image polygon around y; equals the true winding
  /// number whenever clear_of(y, 2 * slack) holds.
  int polygon_winding(const Point2d& y) const;

 private:
  std::vector<Point2d> pts_;  // closed: front() == back()
  double slack_;
  double bucket_;
  Point2d origin_;
  std::unordered_map<long long, std::vector<std::size_t>> grid_;
  std::unordered_map<long long, std::vector<std::size_t>> strips_;  // edges meeting each horizontal strip
  long long key(long long i, long long j) const { return (i << 32) ^ (j & 0xffffffffLL); }
};

struct IdentityCheck {
  double lhs = 0;
  double rhs = 0;
  double residual = 0;  // |lhs - rhs|
  double error_estimate = 0;
  std::string note;
};

struct DegreeOptions {
  QuadOptions quad{1e-5, 5, 24, 11, 4, 2};
  int grid_n = 512;       // finest raster cells per bbox side
  int leaf_samples = 4;   // samples per axis on raster cells touching the boundary image
  WindingOptions winding;
};

/// Integral of weight(y) deg(map, U, y) over box, with U bounded by curve.
QuadResult integrate_degree(const PlanarMap& map, const BoundaryCurve& curve, const Rect2d& box,
                            const std::function<double(const Point2d&)>& weight, const DegreeOptions& opts = {});

/// int_U eta(f) J_f dx against int eta(y) deg(f, U, y) dy.
IdentityCheck degree_formula_check(const PlanarMap& map, const Rect2d& U, const TestFunction& eta,
                                   const DegreeOptions& opts = {});

/// int deg(g, U, z) dz against D_1 f_1(U) for g = (f_1, x_2).
IdentityCheck aux_degree_identity(const PlanarMap& f, const Rect2d& U, const DegreeOptions& opts = {});

/// <Det Df, phi> = -int f_1 det(D phi, D f_2) dx.
QuadResult distributional_jacobian(const PlanarMap& f, const TestFunction& phi, const QuadOptions& opts = {});

struct ImageArea {
  double area = 0;
  double cell_size = 0;
  double error_bound = 0;  // boundary cells * cell area
  std::size_t boundary_cells = 0;
};

/// |f(E)| by counting raster cells whose center y has f^{-1}(y) in E; cells
/// certifiably away from f(boundary E) are counted in blocks.
ImageArea image_area(const PlanarMap& f, const Rect2d& E, int grid_n = 512, int leaf_samples = 4);

/// int_E J_f dx against |f(E)|.
IdentityCheck det_equals_area_check(const PlanarMap& f, const Rect2d& E, const DegreeOptions& opts = {});

/// Riemann-Stieltjes sum of u dv along the curve, doubling the subdivision of
/// every edge until two successive sums differ by less than tol.
double stieltjes_boundary(const std::function<double(const Point2d&)>& u,
                          const std::function<double(const Point2d&)>& v, const BoundaryCurve& curve,
                          double tol = 1e-9, int max_doublings = 22);

}  // namespace bvhomeo
