#pragma once

// Seeded random Jacobian chains.
//
// The stream is std::mt19937_64 seeded with `seed`. Bounded draws use
// rejection sampling: with span = hi - lo + 1, raw 64-bit outputs
// x >= 2^64 - (2^64 mod span) are discarded and lo + x mod span is
// returned. Draw order: n_1, then (m_i, |E_i|) for i = 1..q; n_{i+1} is set
// to m_i so the chain composes.

#include <cstdint>
#include <random>

#include "jcdp/chain.hpp"

namespace jcdp {

struct Range {
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
  friend bool operator==(const Range&, const Range&) = default;
};

struct GeneratorConfig {
  std::size_t length = 1;
  Range size_range{5, 50};
  Range dag_size_range{1000, 10000};
  std::uint64_t seed = 0;
};

/// Uniform integer in [range.lo, range.hi] by the rejection rule above.
std::uint64_t draw_uniform(std::mt19937_64& rng, Range range);

/// Throws Error for an empty chain or ranges with lo == 0 or lo > hi.
JacobianChain generate(const GeneratorConfig& config);

/// Seed of the id-th instance of a batch: output id + 1 of a SplitMix64
/// stream whose state starts at `seed`.
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t id);

}  // namespace jcdp
