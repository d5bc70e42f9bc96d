#include "bvhomeo/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bvhomeo {

unsigned worker_count() {
  if (const char* env = std::getenv("BVHOMEO_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace bvhomeo
