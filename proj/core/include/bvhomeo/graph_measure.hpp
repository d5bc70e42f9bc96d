#pragma once

// The vector measure carried by the graph of a planar homeomorphism: its
// components on cells and product windows, the lower mass bound on windows,
// the adjugate identity for the inverse gradient, blow-up profiles and the
// boundaryless residuals.

#include "bvhomeo/degree.hpp"
#include "bvhomeo/planar_map.hpp"

#include <array>
#include <string>
#include <vector>

namespace bvhomeo {

/// Components of the graph measure: mu12 (domain area), mu_up12 (image area)
/// and mu_i_j with mu_1_j = D_2 f_j, mu_2_j = -D_1 f_j.
struct MuVector {
  double mu12 = 0, mu_up12 = 0;
  double mu_1_1 = 0, mu_1_2 = 0, mu_2_1 = 0, mu_2_2 = 0;
  std::string window;

  std::array<double, 6> components() const { return {mu12, mu_up12, mu_1_1, mu_1_2, mu_2_1, mu_2_2}; }
  double norm() const;
  double max_abs() const;
  MuVector& operator+=(const MuVector& o);
  MuVector scaled(double s) const;
};

/// How mu_up12 is obtained: rasterized |f(E)| or the Jacobian integral.
enum class MuRoute { raster, jacobian };

MuVector mu_on_cell(const PlanarMap& f, const Rect2d& E, MuRoute route = MuRoute::raster,
                    const DegreeOptions& opts = {});
/// Same for the construction map f_k.
MuVector mu_on_cell(int k, const Rect2d& E, MuRoute route = MuRoute::raster, const DegreeOptions& opts = {});

enum class WindowShape { ball, square };

struct WindowOptions {
  int partition = 32;  // cells per axis over the x-window's bounding square; 0 = one cell per sample
  int samples = 4;     // minimum midpoint samples per axis in each cell
  double step_x1 = 0;  // if positive, sample spacing along x1 is at most this
  double step_x2 = 0;
  WindowShape y_shape = WindowShape::ball;
};

struct WindowMeasure {
  MuVector total;               // signed components restricted to the window
  double variation_lower = 0;   // sum over partition cells of |mu(cell)|
  double x_area = 0;            // area of {x in the x-window : f(x) in the y-window}
};

/// mu restricted to Gamma intersected with B(x0, rx) x W(y0, ry); samples
/// outside the map's domain are dropped.
WindowMeasure window_measure(const PlanarMap& f, const Point2d& x0, double rx, const Point2d& y0, double ry,
                             const WindowOptions& opts = {});

/// |mu|(B(x0,r) x B(f(x0),r)) / r^2, with |mu| approximated from below.
double fundamental_ratio(const PlanarMap& f, const Point2d& x0, double r, const WindowOptions& opts = {});
/// Same on the sense-preserving level-k map.
double fundamental_ratio(int k, const Point2d& x0, double r, const WindowOptions& opts = {});

struct AdjugateCheck {
  std::array<IdentityCheck, 4> entries;  // (1,1), (1,2), (2,1), (2,2)
  double max_residual() const;
};

/// int_{f(U)} D(f^{-1}) dy against int_U adj Df dx, entry by entry.
AdjugateCheck inverse_gradient_check(const PlanarMap& f, const Rect2d& U, const DegreeOptions& opts = {});

struct BlowupProfile {
  Point2d x0, y0;
  std::vector<double> scales;
  std::vector<MuVector> kappa;      // window components divided by the window's |mu|
  std::vector<double> variation;    // the window's |mu| lower bound
  std::vector<double> block_det;    // det of the normalized (mu_i_j) block

  std::vector<double> kappa12() const;
  std::vector<double> kappa_up12() const;
};

/// Profiles at (x0, f(x0)) with x-balls and y-squares of radius r.
BlowupProfile blowup_profile(const PlanarMap& f, const Point2d& x0, const std::vector<double>& scales,
                             const WindowOptions& opts = {});
/// Per-sample window options resolving the level-k cell structure: steps
/// 2^{-(k+3)} along x1 and 2^{-(2k+1)} along x2 (cells are 2^{1-2k} tall).
WindowOptions level_window_options(int k);

/// Cantor point (u_alpha, v_beta) of the given codes, scales 2^{-1..-jmax},
/// sense-preserving level-k map. Requires k >= jmax.
BlowupProfile blowup_profile(int k, const SignCode& alpha, const SignCode& beta, int jmax,
                             const WindowOptions& opts);
BlowupProfile blowup_profile(int k, const SignCode& alpha, const SignCode& beta, int jmax = 5);

enum class FormSlot { dx1, dx2, dy1, dy2 };
const char* slot_name(FormSlot s);

struct BoundarylessResult {
  double residual = 0;
  double error_estimate = 0;
  std::vector<double> terms;  // the assembled pieces, residual = their sum
};

/// <mu, d(eta(x) phi(y) dz)> for dz the chosen coordinate form; zero for a
/// boundaryless graph. The dy slots need f to be sense preserving.
BoundarylessResult boundaryless_residual(const PlanarMap& f, const TestFunction& eta, const TestFunction& phi,
                                         FormSlot slot, const QuadOptions& opts = {});

/// Sum of |mu(cell)| over an n x n partition of the domain (jacobian route,
/// midpoint sampling).
double graph_mass_proxy(const PlanarMap& f, int n, int samples = 4);

}  // namespace bvhomeo
