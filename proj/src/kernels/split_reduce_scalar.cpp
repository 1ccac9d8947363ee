#include <algorithm>

#include "jcdp/kernels.hpp"

namespace jcdp::kernels {

SplitBest split_min_max_scalar(std::span<const Cost> left, std::span<const Cost> right) {
  const auto n = left.size();
  SplitBest best;
  for (std::size_t a = 0; a < n; ++a) {
    const Cost v = std::max(left[a], right[n - 1 - a]);
    if (v < best.value) {
      best.value = v;
      best.index = a;
    }
  }
  return best;
}

}  // namespace jcdp::kernels
