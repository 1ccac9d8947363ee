#include <atomic>

#include "jcdp/kernels.hpp"

namespace jcdp::kernels {
namespace {

using SplitFn = SplitBest (*)(std::span<const Cost>, std::span<const Cost>);

Isa detect_best() {
#if defined(JCDP_HAVE_AVX2_KERNELS)
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
#if defined(JCDP_HAVE_NEON_KERNELS)
  return Isa::Neon;  // mandatory on AArch64
#endif
  return Isa::Scalar;
}

SplitFn kernel_for(Isa isa) {
  switch (isa) {
#if defined(JCDP_HAVE_AVX2_KERNELS)
    case Isa::Avx2:
      return &split_min_max_avx2;
#endif
#if defined(JCDP_HAVE_NEON_KERNELS)
    case Isa::Neon:
      return &split_min_max_neon;
#endif
    default:
      return &split_min_max_scalar;
  }
}

struct State {
  std::atomic<Isa> isa;
  std::atomic<SplitFn> split;
  State() : isa(detect_best()), split(kernel_for(isa.load())) {}
};

State& state() {
  static State s;
  return s;
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(JCDP_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(JCDP_HAVE_NEON_KERNELS)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return state().isa.load(std::memory_order_relaxed); }

void select_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw Error("kernel variant " + std::string(isa_name(isa)) + " is not supported here");
  }
  state().isa.store(isa, std::memory_order_relaxed);
  state().split.store(kernel_for(isa), std::memory_order_relaxed);
}

void select_best_isa() { select_isa(detect_best()); }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

SplitBest split_min_max(std::span<const Cost> left, std::span<const Cost> right) {
  return state().split.load(std::memory_order_relaxed)(left, right);
}

}  // namespace jcdp::kernels
