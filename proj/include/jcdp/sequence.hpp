#pragma once

// Elimination sequences: the steps of a bracketing, their in-tree
// precedence graph, makespan simulation and text/DOT rendering.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jcdp/chain.hpp"

namespace jcdp {

enum class StepKind { AccTan, AccAdj, EliTan, EliAdj, EliMul };

bool is_accumulation(StepKind kind);

/// Contiguous range of machine identifiers [lo, hi], 1-based.
struct MachinePool {
  std::uint32_t lo = 1;
  std::uint32_t hi = 1;

  std::uint32_t size() const { return hi - lo + 1; }
  friend bool operator==(const MachinePool&, const MachinePool&) = default;
};

/// Jacobian F'_{j,i} identified by its 0-based boundaries (i-1, j).
struct JacobianSpan {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  friend auto operator<=>(const JacobianSpan&, const JacobianSpan&) = default;
};

/// One step, written "ACC TAN (i-1 i)" or "ELI MUL (i-1 k j)". For
/// accumulations `split` is unused and right == left + 1.
struct EliminationStep {
  StepKind kind = StepKind::AccTan;
  std::uint32_t left = 0;
  std::uint32_t split = 0;
  std::uint32_t right = 1;
  MachinePool pool;
  Cost cost = 0;  ///< duration in fma units

  JacobianSpan produces() const { return {left, right}; }
  /// Preaccumulated inputs: none for ACC, (i-1,k) for TAN, (k,j) for ADJ,
  /// both for MUL.
  std::vector<JacobianSpan> consumes() const;

  friend bool operator==(const EliminationStep&, const EliminationStep&) = default;
};

struct EliminationSequence {
  std::vector<EliminationStep> steps;

  std::size_t size() const { return steps.size(); }
  friend bool operator==(const EliminationSequence&, const EliminationSequence&) = default;
};

class InfeasibleStepError : public Error {
 public:
  using Error::Error;
};

class InvalidSequenceError : public Error {
 public:
  using Error::Error;
};

/// fma count of a single step under the given tape limit. Throws
/// InfeasibleStepError for an adjoint step whose tape does not fit and
/// Error for indices outside the chain.
Cost step_cost(const EliminationStep& step, const JacobianChain& chain, MemoryLimit limit);

/// In-tree over the steps: successor[s] is the step consuming the
/// Jacobian produced by step s, empty for the root.
struct TaskGraph {
  std::vector<EliminationStep> nodes;
  std::vector<std::optional<std::size_t>> successor;

  /// Producer -> consumer pairs (0-based), sorted by producer.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t root() const;
};

/// Throws InvalidSequenceError on double production, consumption of a
/// Jacobian that was never produced, or a Jacobian consumed twice.
TaskGraph build_task_graph(const EliminationSequence& seq);

struct ValidationResult {
  bool ok = true;
  std::string message;  ///< first violation, empty when ok
  explicit operator bool() const { return ok; }
};

/// Checks step shapes against the chain, produce-once/consume-once,
/// sequence order being topological, nonempty pools, a single root and
/// that the root is F'_{q,1}.
ValidationResult validate(const EliminationSequence& seq, const JacobianChain& chain);

/// How a step holds machines while it runs.
enum class Occupancy {
  /// The step runs on pool.lo but reserves every machine of its pool, so
  /// sub-problems that share a pool run one after the other. This is the
  /// execution model the scheduled DP assumes.
  Pool,
  /// Classic P|intree|Cmax: only the executing machine pool.lo is busy.
  ExecutingMachine,
};

/// Start/completion times of a simulated list schedule.
struct ScheduleState {
  std::vector<Cost> start;       ///< S_j
  std::vector<Cost> completion;  ///< C_j = S_j + p_j
  std::vector<std::uint32_t> machine;  ///< sigma(j), 1-based
  std::vector<Cost> available;   ///< alpha_i after the last step, index i-1
  Cost makespan = 0;             ///< C_max
};

/// Non-preemptive list scheduling in sequence order: each step starts once
/// its inputs are complete and its machine(s) are free. Throws Error when
/// a pool exceeds `machines`.
ScheduleState simulate(const EliminationSequence& seq, std::uint32_t machines,
                       Occupancy occupancy = Occupancy::Pool);

Cost evaluate_makespan(const EliminationSequence& seq, std::uint32_t machines,
                       Occupancy occupancy = Occupancy::Pool);

/// "ELI MUL (1 4 6) [2,3]"
std::string format_step(const EliminationStep& step);
/// One "n: <step>" line per step.
std::string format_sequence(const EliminationSequence& seq);

/// Parses a single step; accepts runs of blanks and an optional pool
/// suffix (defaults to [1]). Step costs are left at 0.
EliminationStep parse_step(std::string_view text);
/// Parses format_sequence output; the "n:" prefixes must count up from 1.
EliminationSequence parse_sequence(std::string_view text);

/// Recomputes every step cost from the chain with a single tape limit.
void assign_costs(EliminationSequence& seq, const JacobianChain& chain, MemoryLimit limit);

/// Graphviz digraph, one labelled node per step and one line per edge.
std::string export_dot(const TaskGraph& graph);

}  // namespace jcdp
