#pragma once

// Exact reference solver: nested branch-and-bound over every elimination
// sequence (task tree) and every schedule of that tree on m identical
// machines. Used to measure how far the scheduled DP is from optimal.

#include <cstdint>
#include <optional>
#include <vector>

#include "jcdp/chain.hpp"
#include "jcdp/dp.hpp"
#include "jcdp/rational.hpp"
#include "jcdp/sequence.hpp"

namespace jcdp {

struct BnBConfig {
  MachineConfig machines;
  Mode mode = Mode::LimitedMemoryMatrixFree;
  double time_budget_seconds = 0;  ///< 0 = unlimited
  std::uint64_t node_limit = 0;    ///< 0 = unlimited; deterministic alternative to the clock
};

enum class BnBStatus { Proven, BudgetExhausted };

struct BnBResult {
  Cost cost = kInfeasible;  ///< optimum, or best incumbent when the budget ran out
  EliminationSequence witness;  ///< single-machine pools, dispatch order
  BnBStatus status = BnBStatus::Proven;
  std::uint64_t nodes = 0;  ///< tree and schedule nodes explored
};

/// Tape limit for one task running on one machine: total/m when
/// distributed, the whole shared memory otherwise.
MemoryLimit task_memory_limit(const MachineConfig& config);

BnBResult solve_exact(const JacobianChain& chain, const BnBConfig& config);

/// Machines used by the unlimited-parallelism DP solution.
std::uint32_t useful_machines(const JacobianChain& chain, Mode mode, MemoryLimit limit);

/// Tasks of an in-tree: successor[u] consumes u's output; children must
/// have smaller indices than their successor.
struct InTree {
  std::vector<Cost> duration;
  std::vector<std::optional<std::size_t>> successor;
};

struct TreeSchedule {
  Cost makespan = kInfeasible;
  std::vector<Cost> start;
  std::vector<std::uint32_t> machine;  ///< 1-based, numbered by first use
};

/// Minimum-makespan non-preemptive schedule of the tree on `machines`
/// machines (P|intree|Cmax), searched exhaustively. Returns nullopt when
/// no schedule beats `upper_bound`.
std::optional<TreeSchedule> schedule_exact(const InTree& tree, std::uint32_t machines,
                                           Cost upper_bound = kInfeasible);

}  // namespace jcdp
