#include "jcdp/dp.hpp"

#include <algorithm>
#include <set>

#include "jcdp/kernels.hpp"

namespace jcdp {

MemoryLimit memory_limit_for(const MachineConfig& config, std::uint32_t threads) {
  if (config.machines == 0) throw Error("machine count must be at least 1");
  if (threads == 0 || threads > config.machines) {
    throw Error("thread count " + std::to_string(threads) + " outside [1, " +
                std::to_string(config.machines) + "]");
  }
  if (config.memory_limit == 0) return MemoryLimit::unlimited();
  if (config.memory_model == MemoryModel::Distributed) {
    return MemoryLimit(config.memory_limit / config.machines);
  }
  return MemoryLimit(checked_mul(threads, config.memory_limit) / config.machines);
}

MemoryLimit effective_limit(Mode mode, MemoryLimit limit) {
  return mode == Mode::LimitedMemoryMatrixFree ? limit : MemoryLimit::unlimited();
}

DPTable::DPTable(std::size_t length, std::uint32_t max_threads, Mode mode,
                 std::vector<MemoryLimit> limits, bool unbounded)
    : length_(length),
      max_threads_(max_threads),
      mode_(mode),
      limits_(std::move(limits)),
      unbounded_(unbounded),
      costs_(length * length * max_threads, kInfeasible),
      decisions_(length * length * max_threads) {
  if (length == 0 || max_threads == 0 || limits_.size() != max_threads) {
    throw Error("malformed DP table dimensions");
  }
}

std::size_t DPTable::at(std::size_t j, std::size_t i, std::uint32_t t) const {
  return ((j - 1) * length_ + (i - 1)) * max_threads_ + (t - 1);
}

namespace {

void fill(DPTable& table, const JacobianChain& chain) {
  const auto q = chain.length();
  const auto t_max = table.max_threads();
  const bool matrix_free = table.mode() != Mode::Dense;

  for (std::size_t len = 1; len <= q; ++len) {
    for (std::size_t i = 1; i + len - 1 <= q; ++i) {
      const std::size_t j = i + len - 1;
      for (std::uint32_t t = 1; t <= t_max; ++t) {
        const auto limit = effective_limit(table.mode(), table.limit(t));
        if (i == j) {
          const auto& f = chain.element(j);
          const auto kind = accumulation_mode(f, limit) == AccumulationMode::Tangent
                                ? DecisionKind::AccTan
                                : DecisionKind::AccAdj;
          table.set(j, i, t, accumulation_cost(f, limit), {kind});
          continue;
        }

        Cost best = kInfeasible;
        DPDecision best_decision;
        // Strict improvement only: ties keep the earlier alternative, giving
        // the order (k, EliAdj, EliTan, Mul serial, Mul parallel by t*).
        auto offer = [&](Cost c, DPDecision d) {
          if (c < best) {
            best = c;
            best_decision = d;
          }
        };
        const auto m_j = chain.element(j).m;
        const auto n_i = chain.element(i).n;
        for (std::size_t k = i; k < j; ++k) {
          const auto k32 = static_cast<std::uint32_t>(k);
          const Cost upper = table.cost(j, k + 1, t);
          const Cost lower = table.cost(k, i, t);
          if (matrix_free) {
            const Cost tape = chain.edge_sum(i, k);
            if (limit.admits(tape)) {
              offer(checked_add(upper, checked_mul(m_j, tape)), {DecisionKind::EliAdj, k32});
            }
            offer(checked_add(lower, checked_mul(n_i, chain.edge_sum(k + 1, j))),
                  {DecisionKind::EliTan, k32});
          }
          const Cost mul = multiply_cost(m_j, chain.element(k).m, n_i);
          if (table.unbounded()) {
            offer(checked_add(mul, std::max(upper, lower)),
                  {DecisionKind::Mul, k32, SplitKind::Unbounded});
            continue;
          }
          offer(checked_add(mul, checked_add(upper, lower)),
                {DecisionKind::Mul, k32, SplitKind::Serial});
          if (t >= 2) {
            const auto split = kernels::split_min_max(table.costs(j, k + 1).first(t - 1),
                                                      table.costs(k, i).first(t - 1));
            offer(checked_add(mul, split.value),
                  {DecisionKind::Mul, k32, SplitKind::Parallel,
                   static_cast<std::uint32_t>(split.index + 1)});
          }
        }
        table.set(j, i, t, best, best_decision);
      }
    }
  }
}

struct Backtracker {
  const DPTable& table;
  const JacobianChain& chain;
  EliminationSequence seq;

  std::uint32_t width(std::size_t j, std::size_t i) const {
    const auto& d = table.decision(j, i, 1);
    switch (d.kind) {
      case DecisionKind::AccTan:
      case DecisionKind::AccAdj:
        return 1;
      case DecisionKind::EliAdj:
        return width(j, d.k + 1);
      case DecisionKind::EliTan:
        return width(d.k, i);
      case DecisionKind::Mul:
        return width(j, d.k + 1) + width(d.k, i);
    }
    return 1;
  }

  Cost emit_step(StepKind kind, std::size_t i, std::size_t k, std::size_t j, std::uint32_t t,
                 MachinePool pool) {
    EliminationStep step;
    step.kind = kind;
    step.left = static_cast<std::uint32_t>(i - 1);
    step.split = is_accumulation(kind) ? 0 : static_cast<std::uint32_t>(k);
    step.right = static_cast<std::uint32_t>(j);
    step.pool = pool;
    step.cost = step_cost(step, chain, effective_limit(table.mode(), table.limit(t)));
    seq.steps.push_back(step);
    return step.cost;
  }

  // Returns the makespan contribution implied by the emitted sub-tree so the
  // caller can cross-check it against the table.
  Cost emit(std::size_t j, std::size_t i, std::uint32_t t, MachinePool pool) {
    const auto& d = table.decision(j, i, t);
    Cost implied = 0;
    switch (d.kind) {
      case DecisionKind::AccTan:
      case DecisionKind::AccAdj:
        if (i != j) throw Error("malformed DP table: accumulation off the diagonal");
        implied = emit_step(d.kind == DecisionKind::AccTan ? StepKind::AccTan : StepKind::AccAdj,
                            i, 0, j, t, pool);
        break;
      case DecisionKind::EliAdj:
      case DecisionKind::EliTan: {
        if (!(i <= d.k && d.k < j)) throw Error("malformed DP table: split out of range");
        const Cost child = d.kind == DecisionKind::EliAdj ? emit(j, d.k + 1, t, pool)
                                                          : emit(d.k, i, t, pool);
        implied = checked_add(
            child, emit_step(d.kind == DecisionKind::EliAdj ? StepKind::EliAdj : StepKind::EliTan,
                             i, d.k, j, t, pool));
        break;
      }
      case DecisionKind::Mul: {
        if (!(i <= d.k && d.k < j)) throw Error("malformed DP table: split out of range");
        Cost children = 0;
        if (d.split == SplitKind::Serial) {
          children = checked_add(emit(j, d.k + 1, t, pool), emit(d.k, i, t, pool));
        } else if (d.split == SplitKind::Parallel) {
          const auto t_star = d.threads_left;
          if (t_star == 0 || t_star >= t || pool.size() != t) {
            throw Error("malformed DP table: bad thread split");
          }
          const Cost up = emit(j, d.k + 1, t_star, {pool.lo, pool.lo + t_star - 1});
          const Cost low = emit(d.k, i, t - t_star, {pool.lo + t_star, pool.hi});
          children = std::max(up, low);
        } else {
          const auto w_up = width(j, d.k + 1);
          const auto w_low = width(d.k, i);
          const Cost up = emit(j, d.k + 1, t, {pool.lo, pool.lo + w_up - 1});
          const Cost low = emit(d.k, i, t, {pool.lo + w_up, pool.lo + w_up + w_low - 1});
          children = std::max(up, low);
        }
        implied = checked_add(children, emit_step(StepKind::EliMul, i, d.k, j, t, pool));
        break;
      }
    }
    if (implied != table.cost(j, i, t)) {
      throw Error("malformed DP table: cell (" + std::to_string(j) + "," + std::to_string(i) +
                  "," + std::to_string(t) + ") does not match its decision");
    }
    return implied;
  }
};

}  // namespace

DPTable solve_serial(const JacobianChain& chain, Mode mode, MemoryLimit limit) {
  DPTable table(chain.length(), 1, mode, {limit});
  fill(table, chain);
  return table;
}

DPTable solve_scheduled(const JacobianChain& chain, Mode mode, const MachineConfig& config) {
  if (config.machines == 0) throw Error("machine count must be at least 1");
  const auto t_max = static_cast<std::uint32_t>(
      std::min<std::size_t>(config.machines, chain.length()));
  std::vector<MemoryLimit> limits;
  for (std::uint32_t t = 1; t <= t_max; ++t) limits.push_back(memory_limit_for(config, t));
  DPTable table(chain.length(), t_max, mode, std::move(limits));
  fill(table, chain);
  return table;
}

DPTable solve(const JacobianChain& chain, SolverVariant variant, const MachineConfig& config) {
  if (variant.scheduled) return solve_scheduled(chain, variant.mode, config);
  return solve_serial(chain, variant.mode, memory_limit_for(config, 1));
}

DPTable solve_unbounded(const JacobianChain& chain, Mode mode, MemoryLimit limit) {
  DPTable table(chain.length(), 1, mode, {limit}, /*unbounded=*/true);
  fill(table, chain);
  return table;
}

EliminationSequence backtrack(const DPTable& table, const JacobianChain& chain) {
  if (table.length() != chain.length()) throw Error("DP table does not belong to this chain");
  Backtracker bt{table, chain, {}};
  const auto q = chain.length();
  const auto t = table.max_threads();
  const std::uint32_t machines = table.unbounded() ? bt.width(q, 1) : t;
  bt.emit(q, 1, t, {1, machines});
  return std::move(bt.seq);
}

std::uint32_t machines_used(const EliminationSequence& seq) {
  std::set<std::uint32_t> ids;
  for (const auto& step : seq.steps) ids.insert(step.pool.lo);
  return static_cast<std::uint32_t>(ids.size());
}

}  // namespace jcdp
