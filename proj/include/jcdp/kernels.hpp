#pragma once

// Data-parallel inner loop of the scheduled DP: the thread-split term
//
//   min_{1 <= t* < t} max(fma_{j,k+1}^{(t*)}, fma_{k,i}^{(t-t*)})
//
// One scalar reference kernel plus SIMD variants (AVX2 on x86-64, NEON on
// AArch64). The variant is picked at runtime from CPU features; all of
// them must agree bit-for-bit with the scalar kernel.

#include <cstddef>
#include <span>
#include <string_view>

#include "jcdp/chain.hpp"

namespace jcdp::kernels {

enum class Isa { Scalar, Avx2, Neon };

struct SplitBest {
  Cost value = kInfeasible;
  std::size_t index = 0;  ///< first position attaining `value`

  friend bool operator==(const SplitBest&, const SplitBest&) = default;
};

/// min over a in [0, n) of max(left[a], right[n - 1 - a]), with the
/// smallest minimising a. Requires left.size() == right.size() == n >= 1.
SplitBest split_min_max_scalar(std::span<const Cost> left, std::span<const Cost> right);
#if defined(JCDP_HAVE_AVX2_KERNELS)
SplitBest split_min_max_avx2(std::span<const Cost> left, std::span<const Cost> right);
#endif
#if defined(JCDP_HAVE_NEON_KERNELS)
SplitBest split_min_max_neon(std::span<const Cost> left, std::span<const Cost> right);
#endif

/// Dispatches to the active variant.
SplitBest split_min_max(std::span<const Cost> left, std::span<const Cost> right);

bool isa_supported(Isa isa);
Isa active_isa();
/// Forces a variant (tests, benchmarking). Throws Error when unsupported.
void select_isa(Isa isa);
/// Restores the best variant for this CPU.
void select_best_isa();
std::string_view isa_name(Isa isa);

}  // namespace jcdp::kernels
