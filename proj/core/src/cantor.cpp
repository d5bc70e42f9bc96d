#include "bvhomeo/cantor.hpp"

#include <algorithm>
#include <array>

namespace bvhomeo {

const LevelParams<double>& detail::cached_level_params(int k) {
  static const auto table = [] {
    std::array<LevelParams<double>, kCachedLevels + 1> t{};
    for (int j = 1; j <= kCachedLevels; ++j) t[static_cast<std::size_t>(j)] = make_level_params<double>(j);
    return t;
  }();
  return table[static_cast<std::size_t>(k)];
}

const char* region_name(Region r) {
  switch (r) {
    case Region::Q: return "Q";
    case Region::A: return "A";
    case Region::B: return "B";
    case Region::SeamAB: return "SeamAB";
    case Region::BoundaryP: return "BoundaryP";
    case Region::Outside: return "Outside";
  }
  return "?";
}

double cell_sup_diameter(int k) {
  return pow2<double>(1 - k) * std::max(seq_a<double>(k), seq_b<double>(k));
}

EvalResult f_limit_eval(const Point2d& x, int depth) {
  require_level(depth);
  EvalResult r;
  r.value = f_level_eval(depth, x);
  r.depth_used = depth;
  // Off S_{depth+1} every later approximant agrees with f_depth. Inside, f and
  // f_depth both land in the same level depth+1 image cell.
  r.error_bound = locate(x, depth + 1) ? cell_sup_diameter(depth + 1) : 0.0;
  return r;
}

}  // namespace bvhomeo
