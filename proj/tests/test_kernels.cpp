#include <doctest.h>

#include <random>
#include <vector>

#include "jcdp/kernels.hpp"

using namespace jcdp;
using namespace jcdp::kernels;

namespace {

// Plain loop, written independently of the library's scalar kernel.
SplitBest reference(const std::vector<Cost>& left, const std::vector<Cost>& right) {
  SplitBest best;
  const auto n = left.size();
  for (std::size_t a = 0; a < n; ++a) {
    const auto v = std::max(left[a], right[n - 1 - a]);
    if (a == 0 || v < best.value) best = {v, a};
  }
  return best;
}

std::vector<Cost> random_costs(std::mt19937_64& rng, std::size_t n, int style) {
  std::vector<Cost> v(n);
  for (auto& x : v) {
    switch (style) {
      case 0: x = rng() % 8; break;                  // heavy ties
      case 1: x = rng(); break;                      // full range, top bit set half the time
      case 2: x = (rng() % 4 == 0) ? kInfeasible : rng() % 1000; break;
      default: x = kInfeasible - rng() % 3; break;   // near the sentinel
    }
  }
  return v;
}

struct IsaGuard {
  ~IsaGuard() { select_best_isa(); }
};

}  // namespace

TEST_CASE("scalar kernel matches the reference loop") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto n = 1 + rng() % 40;
    const auto l = random_costs(rng, n, trial % 4);
    const auto r = random_costs(rng, n, (trial / 4) % 4);
    REQUIRE(split_min_max_scalar(l, r) == reference(l, r));
  }
}

TEST_CASE("small fixed cases") {
  const std::vector<Cost> l{5, 3, 9};
  const std::vector<Cost> r{1, 4, 2};
  // pairs: (5,2) (3,4) (9,1) -> maxima 5 4 9
  CHECK(split_min_max_scalar(l, r) == SplitBest{4, 1});
  const std::vector<Cost> tie_l{2, 2};
  const std::vector<Cost> tie_r{2, 2};
  CHECK(split_min_max_scalar(tie_l, tie_r) == SplitBest{2, 0});
  const std::vector<Cost> inf{kInfeasible};
  CHECK(split_min_max_scalar(inf, inf) == SplitBest{kInfeasible, 0});
}

TEST_CASE("every supported SIMD variant agrees with scalar bit for bit") {
  std::vector<Isa> variants;
  for (auto isa : {Isa::Avx2, Isa::Neon}) {
    if (isa_supported(isa)) variants.push_back(isa);
  }
  if (variants.empty()) MESSAGE("no SIMD variant on this CPU; scalar only");
  IsaGuard guard;
  std::mt19937_64 rng(2);
  for (auto isa : variants) {
    CAPTURE(isa_name(isa));
    select_isa(isa);
    CHECK(active_isa() == isa);
    for (int trial = 0; trial < 5000; ++trial) {
      const auto n = 1 + rng() % 67;
      const auto l = random_costs(rng, n, trial % 4);
      const auto r = random_costs(rng, n, (trial / 3) % 4);
      REQUIRE(split_min_max(l, r) == split_min_max_scalar(l, r));
    }
  }
}

TEST_CASE("isa selection") {
  IsaGuard guard;
  CHECK(isa_supported(Isa::Scalar));
  select_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  for (auto isa : {Isa::Avx2, Isa::Neon}) {
    if (!isa_supported(isa)) CHECK_THROWS_AS(select_isa(isa), Error);
  }
  select_best_isa();
#if defined(JCDP_HAVE_AVX2_KERNELS)
  if (isa_supported(Isa::Avx2)) CHECK(active_isa() == Isa::Avx2);
#endif
  CHECK(isa_name(Isa::Scalar) == "scalar");
}
