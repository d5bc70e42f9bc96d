#pragma once

// Maps of the plane bundled with what the degree and graph-measure code needs:
// values, a.e. gradients, an inverse, smooth-piece classifiers and a
// Lipschitz bound for certified winding numbers.

#include "bvhomeo/core_types.hpp"
#include "bvhomeo/quadrature.hpp"

#include <functional>
#include <string>

namespace bvhomeo {

struct PlanarMap {
  std::string name;
  Rect2d domain = unit_box();
  std::function<Point2d(const Point2d&)> eval;
  std::function<Mat2d(const Point2d&)> gradient;          // defined a.e.; may be empty
  std::function<Point2d(const Point2d&)> inverse;         // may be empty
  std::function<Mat2d(const Point2d&)> inverse_gradient;  // may be empty
  CellClassifier smooth_on;          // cells of the domain on which the gradient is one formula
  CellClassifier inverse_smooth_on;  // same for the inverse, in image coordinates
  double lipschitz = 0;              // Euclidean Lipschitz bound on the domain; 0 if unknown
  double inverse_lipschitz = 0;

  Point2d operator()(const Point2d& x) const { return eval(x); }
  bool has_jacobian() const { return static_cast<bool>(gradient); }
  double jacobian(const Point2d& x) const { return gradient(x).det(); }
};

/// Which representative of the level-k construction map to use.
enum class Orientation {
  construction,      // f_k as glued from g_k; an involution with J < 0
  sense_preserving,  // F_k = swap o f_k; inverse y -> f_k(swap y), J > 0
};

/// Euclidean Lipschitz bound for f_k on Q_0 (used for certified winding).
double level_lipschitz(int k);

PlanarMap level_map(int k, Orientation orientation = Orientation::construction);
PlanarMap identity_map(const Rect2d& domain = unit_box());
PlanarMap linear_map(const Mat2d& m, const Rect2d& domain = unit_box());
/// (x1^3, x2) on [0,1]^2.
PlanarMap cube_map();
/// Complex squaring z -> z^2 on [-1,1]^2 (no inverse).
PlanarMap square_map();
/// (x1, -x2).
PlanarMap conjugation_map(const Rect2d& domain = unit_box());
/// g(x) = (f_1(x), x_2).
PlanarMap first_coordinate_map(const PlanarMap& f);
/// h(y) = (y_1, (f^{-1})_2(y)), on the image domain.
PlanarMap second_inverse_coordinate_map(const PlanarMap& f);

}  // namespace bvhomeo
