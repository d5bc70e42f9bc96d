#pragma once

#include <stdexcept>
#include <string>

namespace bvhomeo {

/// Point lies outside the domain of the requested map.
struct OutsideError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Gradient requested on a seam where it is undefined pointwise.
struct SeamError : std::domain_error {
  using std::domain_error::domain_error;
};

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Target point too close to the image of the boundary for a reliable degree.
struct TooCloseToImage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bvhomeo
