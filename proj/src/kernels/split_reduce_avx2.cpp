// Compiled with -mavx2; only called after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <bit>

#include "jcdp/kernels.hpp"

namespace jcdp::kernels {
namespace {

// AVX2 has only signed 64-bit compares; flipping the sign bit maps the
// unsigned order onto the signed one.
inline __m256i unsigned_gt(__m256i a, __m256i b) {
  const __m256i bias = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
  return _mm256_cmpgt_epi64(_mm256_xor_si256(a, bias), _mm256_xor_si256(b, bias));
}

inline __m256i unsigned_max(__m256i a, __m256i b) {
  return _mm256_blendv_epi8(b, a, unsigned_gt(a, b));
}

inline __m256i unsigned_min(__m256i a, __m256i b) {
  return _mm256_blendv_epi8(a, b, unsigned_gt(a, b));
}

// Lanes a..a+3 of the paired maximum; right is read back to front.
inline __m256i paired_max(const Cost* left, const Cost* right, std::size_t n, std::size_t a) {
  const __m256i l = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(left + a));
  const __m256i r_fwd = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(right + n - 4 - a));
  const __m256i r = _mm256_permute4x64_epi64(r_fwd, _MM_SHUFFLE(0, 1, 2, 3));
  return unsigned_max(l, r);
}

}  // namespace

SplitBest split_min_max_avx2(std::span<const Cost> left, std::span<const Cost> right) {
  const std::size_t n = left.size();
  const Cost* lp = left.data();
  const Cost* rp = right.data();

  __m256i vmin = _mm256_set1_epi64x(-1);
  std::size_t a = 0;
  for (; a + 4 <= n; a += 4) {
    vmin = unsigned_min(vmin, paired_max(lp, rp, n, a));
  }
  alignas(32) Cost lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), vmin);
  Cost best = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  for (std::size_t b = a; b < n; ++b) {
    best = std::min(best, std::max(lp[b], rp[n - 1 - b]));
  }

  const __m256i target = _mm256_set1_epi64x(static_cast<long long>(best));
  for (a = 0; a + 4 <= n; a += 4) {
    const __m256i eq = _mm256_cmpeq_epi64(paired_max(lp, rp, n, a), target);
    const int mask = _mm256_movemask_pd(_mm256_castsi256_pd(eq));
    if (mask != 0) {
      return {best, a + static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(mask)))};
    }
  }
  for (; a < n; ++a) {
    if (std::max(lp[a], rp[n - 1 - a]) == best) return {best, a};
  }
  return {best, 0};
}

}  // namespace jcdp::kernels
