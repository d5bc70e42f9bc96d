#pragma once

// Adaptive tensor Gauss-Legendre cubature on dyadic cells.
//
// The domain is covered by the dyadic tree of a root box (Q_0 by default) and
// every tree cell is clipped to the domain, so axis-aligned seams at dyadic
// coordinates end up on cell edges. A classifier marks cells on which the
// integrand is given by one smooth formula; cells straddling a seam are split
// down to a fixed depth and then sampled on a midpoint grid. Sampling a mixed
// cell earlier is unsafe: a sliver of another piece can hide between samples.

#include "bvhomeo/core_types.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace bvhomeo {

enum class CellKind { smooth, zero, mixed };

struct QuadOptions {
  double abs_tol = 1e-4;
  int order = 5;             // Gauss points per axis
  int max_depth = 24;        // dyadic depth below the root
  int max_mixed_depth = 12;  // mixed cells are split down to this depth, then sampled
  int mixed_samples = 4;     // midpoint samples per axis on mixed leaves
  int top_depth = 2;         // 4^top_depth independent subtrees
  int min_smooth_depth = 0;  // smooth cells are always split above this depth
};

struct QuadResult {
  double value = 0;
  double error = 0;  // estimated absolute error
  bool converged = true;
  std::size_t cells = 0;
  std::size_t mixed_leaves = 0;
};

using Integrand = std::function<double(const Point2d&)>;
using CellClassifier = std::function<CellKind(const Rect2d&)>;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_rule(int order);

/// Tensor Gauss estimate on one rectangle.
double gauss_rect(const Integrand& f, const Rect2d& r, int order);

/// Integral of f over domain. The dyadic tree is rooted at `root`, which must
/// contain the domain; pass the domain itself when no alignment is wanted.
QuadResult integrate(const Integrand& f, const Rect2d& domain, const QuadOptions& opts = {},
                     const CellClassifier& classify = {});
QuadResult integrate(const Integrand& f, const Rect2d& domain, const Rect2d& root, const QuadOptions& opts,
                     const CellClassifier& classify);

/// Adaptive Gauss on an interval (halving with Richardson-style comparison).
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-10,
                        int order = 7, int max_depth = 40);

/// Q_0 = [-1, 1]^2.
inline Rect2d unit_box() { return Rect2d({-1, -1}, {1, 1}); }

}  // namespace bvhomeo
