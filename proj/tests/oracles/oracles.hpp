#pragma once

// Brute-force reference implementations. Slow on purpose, and written
// without the library's cost helpers so they can check them.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "jcdp/chain.hpp"
#include "jcdp/dp.hpp"

namespace oracle {

using jcdp::Cost;

// Search over every state of stored Jacobians reachable by ACC/ELI steps;
// serial cost is the plain sum of step costs.
Cost serial_optimum(const jcdp::JacobianChain& chain, jcdp::Mode mode, jcdp::MemoryLimit limit);

// Every task tree times every semi-active schedule on `machines`
// identical machines. Each task gets tape `limit`. Keep q <= 3.
Cost scheduled_optimum(const jcdp::JacobianChain& chain, jcdp::Mode mode,
                       jcdp::MemoryLimit limit, std::uint32_t machines);

// Optimal makespan of an in-tree on `machines` machines, by enumerating
// topological orders and machine choices.
Cost tree_makespan(const std::vector<Cost>& duration,
                   const std::vector<std::optional<std::size_t>>& successor,
                   std::uint32_t machines);

// Multiplies two all-ones matrices with a textbook triple loop and counts
// the scalar multiply-adds it performs.
std::uint64_t counted_fma(std::uint64_t rows, std::uint64_t inner, std::uint64_t cols);

using Matrix = std::vector<std::vector<std::int64_t>>;
Matrix multiply(const Matrix& a, const Matrix& b);
// F'_q ... F'_1 multiplied left to right.
Matrix direct_product(const std::vector<Matrix>& factors);
Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi);

jcdp::JacobianChain random_chain(std::mt19937_64& rng, std::size_t q, std::uint64_t dim_lo,
                                 std::uint64_t dim_hi, std::uint64_t edge_lo,
                                 std::uint64_t edge_hi);

}  // namespace oracle
