#pragma once

// Dynamic programming over sub-chains F'_{j,i}: the serial bracketing
// recurrences (dense, matrix-free, limited-memory matrix-free), their
// scheduled counterparts with a thread count per sub-problem, and the
// backtracking that turns a table into an elimination sequence with
// machine pools.

#include <cstdint>
#include <span>
#include <vector>

#include "jcdp/chain.hpp"
#include "jcdp/sequence.hpp"

namespace jcdp {

enum class Mode {
  Dense,                    ///< accumulations and multiplications only
  MatrixFree,               ///< plus tangent/adjoint eliminations
  LimitedMemoryMatrixFree,  ///< adjoint steps only when the tape fits
};

struct SolverVariant {
  Mode mode = Mode::LimitedMemoryMatrixFree;
  bool scheduled = false;
};

enum class MemoryModel { Distributed, Shared };

struct MachineConfig {
  std::uint32_t machines = 1;
  std::uint64_t memory_limit = 0;  ///< total tape memory, 0 = unlimited
  MemoryModel memory_model = MemoryModel::Distributed;
};

/// Tape limit for a sub-problem granted `threads` machines: total/m per
/// machine when distributed, threads * total / m when shared.
MemoryLimit memory_limit_for(const MachineConfig& config, std::uint32_t threads);

/// The limit actually applied by `mode` (only the limited-memory mode
/// honours a finite limit).
MemoryLimit effective_limit(Mode mode, MemoryLimit limit);

enum class DecisionKind : std::uint8_t { AccTan, AccAdj, EliAdj, EliTan, Mul };

enum class SplitKind : std::uint8_t {
  Serial,     ///< both children get all t threads and run one after the other
  Parallel,   ///< children get t* and t - t* threads and run side by side
  Unbounded,  ///< unlimited machines: children always run side by side
};

struct DPDecision {
  DecisionKind kind = DecisionKind::AccTan;
  std::uint32_t k = 0;  ///< split position, i <= k < j
  SplitKind split = SplitKind::Serial;
  std::uint32_t threads_left = 0;  ///< t* for Parallel splits

  friend bool operator==(const DPDecision&, const DPDecision&) = default;
};

struct DPCell {
  Cost cost = kInfeasible;
  DPDecision decision;
};

/// Memoized fma_{j,i}^{(t)} for 1 <= i <= j <= q and 1 <= t <= t_max.
class DPTable {
 public:
  DPTable(std::size_t length, std::uint32_t max_threads, Mode mode,
          std::vector<MemoryLimit> limits, bool unbounded = false);

  std::size_t length() const { return length_; }
  std::uint32_t max_threads() const { return max_threads_; }
  Mode mode() const { return mode_; }
  bool unbounded() const { return unbounded_; }
  /// Tape limit in force for cells with t threads.
  MemoryLimit limit(std::uint32_t t) const { return limits_.at(t - 1); }

  Cost cost(std::size_t j, std::size_t i, std::uint32_t t) const { return costs_[at(j, i, t)]; }
  const DPDecision& decision(std::size_t j, std::size_t i, std::uint32_t t) const {
    return decisions_[at(j, i, t)];
  }
  /// Costs of (j, i) for t = 1..t_max, contiguous.
  std::span<const Cost> costs(std::size_t j, std::size_t i) const {
    return {costs_.data() + at(j, i, 1), max_threads_};
  }
  /// fma_{q,1}^{(t_max)}
  Cost root_cost() const { return cost(length_, 1, max_threads_); }

  void set(std::size_t j, std::size_t i, std::uint32_t t, Cost c, DPDecision d) {
    costs_[at(j, i, t)] = c;
    decisions_[at(j, i, t)] = d;
  }

 private:
  std::size_t at(std::size_t j, std::size_t i, std::uint32_t t) const;

  std::size_t length_;
  std::uint32_t max_threads_;
  Mode mode_;
  std::vector<MemoryLimit> limits_;
  bool unbounded_;
  std::vector<Cost> costs_;
  std::vector<DPDecision> decisions_;
};

/// Serial recurrence (t = 1). O(q^3).
DPTable solve_serial(const JacobianChain& chain, Mode mode, MemoryLimit limit);

/// Scheduled recurrence for t = 1..min(machines, q).
DPTable solve_scheduled(const JacobianChain& chain, Mode mode, const MachineConfig& config);

/// Dispatches on variant.scheduled; serial solves use the one-thread limit.
DPTable solve(const JacobianChain& chain, SolverVariant variant, const MachineConfig& config);

/// Unlimited machines: a multiplication costs m_j m_k n_i plus the larger
/// of its two children. Single thread column, decisions use
/// SplitKind::Unbounded.
DPTable solve_unbounded(const JacobianChain& chain, Mode mode, MemoryLimit limit);

/// Rebuilds the optimal sequence in post-order (upper sub-chain first).
/// The root owns machines [1, t_max]; a parallel split hands the first t*
/// machines to the upper child (j, k+1) and the remaining ones to (k, i).
/// For unbounded tables each child gets as many machines as its sub-tree
/// uses. Step costs are filled in; throws Error on a malformed table.
EliminationSequence backtrack(const DPTable& table, const JacobianChain& chain);

/// Distinct executing machines in a backtracked sequence.
std::uint32_t machines_used(const EliminationSequence& seq);

}  // namespace jcdp
