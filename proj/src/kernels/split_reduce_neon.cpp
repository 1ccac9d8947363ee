#include <arm_neon.h>

#include <algorithm>

#include "jcdp/kernels.hpp"

namespace jcdp::kernels {
namespace {

inline uint64x2_t paired_max(const Cost* left, const Cost* right, std::size_t n, std::size_t a) {
  const uint64x2_t l = vld1q_u64(left + a);
  const uint64x2_t r_fwd = vld1q_u64(right + n - 2 - a);
  const uint64x2_t r = vextq_u64(r_fwd, r_fwd, 1);  // swap lanes
  return vbslq_u64(vcgtq_u64(l, r), l, r);
}

}  // namespace

SplitBest split_min_max_neon(std::span<const Cost> left, std::span<const Cost> right) {
  const std::size_t n = left.size();
  const Cost* lp = left.data();
  const Cost* rp = right.data();

  uint64x2_t vmin = vdupq_n_u64(kInfeasible);
  std::size_t a = 0;
  for (; a + 2 <= n; a += 2) {
    const uint64x2_t m = paired_max(lp, rp, n, a);
    vmin = vbslq_u64(vcgtq_u64(vmin, m), m, vmin);
  }
  Cost best = std::min(vgetq_lane_u64(vmin, 0), vgetq_lane_u64(vmin, 1));
  for (std::size_t b = a; b < n; ++b) {
    best = std::min(best, std::max(lp[b], rp[n - 1 - b]));
  }

  const uint64x2_t target = vdupq_n_u64(best);
  for (a = 0; a + 2 <= n; a += 2) {
    const uint64x2_t eq = vceqq_u64(paired_max(lp, rp, n, a), target);
    if (vgetq_lane_u64(eq, 0) != 0) return {best, a};
    if (vgetq_lane_u64(eq, 1) != 0) return {best, a + 1};
  }
  for (; a < n; ++a) {
    if (std::max(lp[a], rp[n - 1 - a]) == best) return {best, a};
  }
  return {best, 0};
}

}  // namespace jcdp::kernels
