#pragma once

// Seeded samplers shared by the verification suites and the CLI.

#include "bvhomeo/core_types.hpp"

#include <cstdint>
#include <random>

namespace bvhomeo {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  Point2d point(const Rect2d& box) { return {uniform(box.lo.x1, box.hi.x1), uniform(box.lo.x2, box.hi.x2)}; }
  /// Rectangle inside box with sides drawn from [min_side, max_side].
  Rect2d rect(const Rect2d& box, double min_side, double max_side);
  std::uint64_t bits() { return rng_(); }

 private:
  // 53 random bits mapped to [0, 1); independent of the library's distributions.
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
};

inline Rect2d Sampler::rect(const Rect2d& box, double min_side, double max_side) {
  const double w = std::min(uniform(min_side, max_side), box.width());
  const double h = std::min(uniform(min_side, max_side), box.height());
  const Point2d lo{uniform(box.lo.x1, box.hi.x1 - w), uniform(box.lo.x2, box.hi.x2 - h)};
  return Rect2d(lo, {lo.x1 + w, lo.x2 + h});
}

}  // namespace bvhomeo
