#pragma once

// Jacobian chain instances and the scalar fma cost primitives shared by
// every solver.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jcdp {

/// Count of scalar fused multiply-add operations. Also used as the time
/// unit by the schedulers (one fma == one time unit).
using Cost = std::uint64_t;

/// Marks an alternative that is not admissible (e.g. an adjoint sweep
/// whose tape does not fit). Never a valid result of checked arithmetic.
inline constexpr Cost kInfeasible = std::numeric_limits<Cost>::max();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Both throw OverflowError when the exact result does not fit below
// kInfeasible.
Cost checked_add(Cost a, Cost b);
Cost checked_mul(Cost a, Cost b);

/// One link z_i = F_i(z_{i-1}) of the chain. n columns, m rows, and the
/// edge count of its computational DAG.
struct ElementalFunction {
  std::size_t index = 0;
  std::uint64_t n = 1;
  std::uint64_t m = 1;
  std::uint64_t edges = 1;

  friend bool operator==(const ElementalFunction&, const ElementalFunction&) = default;
};

/// Persistent memory available for adjoint tapes, in DAG edges.
class MemoryLimit {
 public:
  static MemoryLimit unlimited() { return MemoryLimit(); }
  /// 0 means unlimited, matching the config file's "available_memory 0".
  static MemoryLimit from_raw(std::uint64_t raw) {
    return raw == 0 ? unlimited() : MemoryLimit(raw);
  }
  explicit MemoryLimit(std::uint64_t edges) : limit_(edges) {}

  bool is_unlimited() const { return !limit_.has_value(); }
  /// True when a tape of `tape_edges` fits.
  bool admits(std::uint64_t tape_edges) const { return !limit_ || tape_edges <= *limit_; }
  /// Raw value, 0 for unlimited.
  std::uint64_t raw() const { return limit_.value_or(0); }

  friend bool operator==(const MemoryLimit&, const MemoryLimit&) = default;

 private:
  MemoryLimit() = default;
  std::optional<std::uint64_t> limit_;
};

enum class AccumulationMode { Tangent, Adjoint };

class JacobianChain {
 public:
  /// Validates dimensions, edge counts, indices and composability
  /// (n_{i+1} == m_i). Throws Error on violation.
  explicit JacobianChain(std::vector<ElementalFunction> elements);

  std::size_t length() const { return elements_.size(); }
  /// 1-based access, i in [1, length()].
  const ElementalFunction& element(std::size_t i) const;
  const std::vector<ElementalFunction>& elements() const { return elements_; }

  /// Sum of |E_nu| for nu in [low, high], 1-based inclusive.
  Cost edge_sum(std::size_t low, std::size_t high) const;

  friend bool operator==(const JacobianChain& a, const JacobianChain& b) {
    return a.elements_ == b.elements_;
  }

 private:
  std::vector<ElementalFunction> elements_;
  std::vector<Cost> prefix_edges_;  // prefix_edges_[i] = sum of edges 1..i
};

/// Cheapest way to accumulate F'_i: edges * min(n, m), falling back to
/// tangent mode (edges * n) when the tape exceeds the limit.
Cost accumulation_cost(const ElementalFunction& f, MemoryLimit limit);
/// Mode realising accumulation_cost. Ties go to tangent mode.
AccumulationMode accumulation_mode(const ElementalFunction& f, MemoryLimit limit);

/// Dense product of a rows x inner by inner x cols matrix.
Cost multiply_cost(std::uint64_t rows, std::uint64_t inner, std::uint64_t cols);

/// Free-function form of JacobianChain::edge_sum.
inline Cost edge_sum(const JacobianChain& chain, std::size_t low, std::size_t high) {
  return chain.edge_sum(low, high);
}

// Text form:
//   q <length>
//   <index> <n> <m> <edges>     (one line per element)
std::string to_text(const JacobianChain& chain);
JacobianChain parse_chain(std::string_view text);

}  // namespace jcdp
