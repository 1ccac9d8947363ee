#include "jcdp/generator.hpp"

namespace jcdp {

std::uint64_t draw_uniform(std::mt19937_64& rng, Range range) {
  if (range.lo > range.hi) throw Error("empty range");
  const std::uint64_t span = range.hi - range.lo + 1;
  if (span == 0) return rng();  // full 64-bit range
  // 2^64 mod span, computed without 128-bit arithmetic.
  const std::uint64_t excess = (0 - span) % span;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (excess != 0 && x >= 0 - excess);
  return range.lo + x % span;
}

JacobianChain generate(const GeneratorConfig& config) {
  if (config.length == 0) throw Error("chain length must be at least 1");
  for (const auto& r : {config.size_range, config.dag_size_range}) {
    if (r.lo == 0 || r.lo > r.hi) {
      throw Error("invalid range [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
    }
  }
  std::mt19937_64 rng(config.seed);
  std::vector<ElementalFunction> elements(config.length);
  std::uint64_t n = draw_uniform(rng, config.size_range);
  for (std::size_t i = 0; i < config.length; ++i) {
    auto& f = elements[i];
    f.index = i + 1;
    f.n = n;
    f.m = draw_uniform(rng, config.size_range);
    f.edges = draw_uniform(rng, config.dag_size_range);
    n = f.m;
  }
  return JacobianChain(std::move(elements));
}

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t id) {
  std::uint64_t z = seed + (id + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace jcdp
