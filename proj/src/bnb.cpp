#include "jcdp/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace jcdp {
namespace {

class Budget {
 public:
  Budget(double seconds, std::uint64_t node_limit) : node_limit_(node_limit) {
    if (seconds > 0) {
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(seconds));
    }
  }

  /// Counts one node; false once the budget is spent.
  bool tick() {
    ++nodes_;
    if (exhausted_) return false;
    if (node_limit_ != 0 && nodes_ > node_limit_) {
      exhausted_ = true;
    } else if (deadline_ && (nodes_ & 0x3ff) == 0 &&
               std::chrono::steady_clock::now() >= *deadline_) {
      exhausted_ = true;
    }
    return !exhausted_;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t node_limit_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

Cost ceil_div(Cost a, Cost b) { return a / b + (a % b != 0 ? 1 : 0); }

// Depth-first search over list schedules generated in nondecreasing
// (start, task) order, which enumerates every semi-active schedule once.
// Machines with equal availability are interchangeable.
class TreeScheduler {
 public:
  TreeScheduler(const InTree& tree, std::uint32_t machines, Budget& budget)
      : tree_(tree), m_(machines), budget_(budget), n_(tree.duration.size()) {
    if (m_ == 0) throw Error("machine count must be at least 1");
    if (n_ == 0 || tree.successor.size() != n_) throw Error("malformed in-tree");
    children_.resize(n_);
    std::size_t roots = 0;
    for (std::size_t u = 0; u < n_; ++u) {
      if (const auto s = tree.successor[u]) {
        if (*s <= u || *s >= n_) throw Error("in-tree successors must have larger indices");
        children_[*s].push_back(u);
      } else {
        root_ = u;
        ++roots;
      }
    }
    if (roots != 1) throw Error("in-tree must have exactly one root");
  }

  std::optional<TreeSchedule> run(Cost upper_bound) {
    best_ = upper_bound;
    start_.assign(n_, kInfeasible);
    completion_.assign(n_, kInfeasible);
    machine_.assign(n_, 0);
    alpha_.assign(m_, 0);
    est_.assign(n_, 0);
    remaining_ = 0;
    for (auto p : tree_.duration) remaining_ = checked_add(remaining_, p);
    scheduled_ = 0;
    any_ = false;
    dfs();
    return std::move(found_);
  }

 private:
  Cost lower_bound() const {
    const Cost base = any_ ? last_start_ : 0;
    Cost floor = std::max(base, *std::min_element(alpha_.begin(), alpha_.end()));
    for (std::size_t u = 0; u < n_; ++u) {
      if (completion_[u] != kInfeasible) continue;
      Cost e = floor;
      for (auto c : children_[u]) {
        e = std::max(e, completion_[c] != kInfeasible ? completion_[c] : est_[c] + tree_.duration[c]);
      }
      est_[u] = e;
    }
    const Cost path = est_[root_] + tree_.duration[root_];
    Cost busy = remaining_;
    for (auto a : alpha_) busy += std::max(a, base);
    return std::max(path, ceil_div(busy, m_));
  }

  void record() {
    const Cost makespan = completion_[root_];
    if (makespan >= best_) return;
    best_ = makespan;
    TreeSchedule s;
    s.makespan = makespan;
    s.start = start_;
    // Renumber machines by first use in dispatch order.
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::pair(start_[a], a) < std::pair(start_[b], b);
    });
    std::vector<std::uint32_t> relabel(m_, 0);
    std::uint32_t next = 1;
    s.machine.assign(n_, 0);
    for (auto u : order) {
      auto& id = relabel[machine_[u]];
      if (id == 0) id = next++;
      s.machine[u] = id;
    }
    found_ = std::move(s);
  }

  void dfs() {
    if (!budget_.tick()) return;
    if (scheduled_ == n_) {
      record();
      return;
    }
    if (lower_bound() >= best_) return;

    for (std::size_t u = 0; u < n_; ++u) {
      if (completion_[u] != kInfeasible) continue;
      Cost ready = 0;
      bool is_ready = true;
      for (auto c : children_[u]) {
        if (completion_[c] == kInfeasible) {
          is_ready = false;
          break;
        }
        ready = std::max(ready, completion_[c]);
      }
      if (!is_ready) continue;

      for (std::uint32_t idx = 0; idx < m_; ++idx) {
        if (std::find(alpha_.begin(), alpha_.begin() + idx, alpha_[idx]) != alpha_.begin() + idx) {
          continue;
        }
        const Cost s = std::max(alpha_[idx], ready);
        if (any_ && (s < last_start_ || (s == last_start_ && u < last_task_))) continue;
        const Cost c = checked_add(s, tree_.duration[u]);
        if (c >= best_) continue;

        const Cost saved_alpha = alpha_[idx];
        const Cost saved_start = last_start_;
        const std::size_t saved_task = last_task_;
        const bool saved_any = any_;

        alpha_[idx] = c;
        start_[u] = s;
        completion_[u] = c;
        machine_[u] = idx;
        last_start_ = s;
        last_task_ = u;
        any_ = true;
        remaining_ -= tree_.duration[u];
        ++scheduled_;

        dfs();

        --scheduled_;
        remaining_ += tree_.duration[u];
        any_ = saved_any;
        last_task_ = saved_task;
        last_start_ = saved_start;
        completion_[u] = kInfeasible;
        start_[u] = kInfeasible;
        alpha_[idx] = saved_alpha;
        if (budget_.exhausted()) return;
      }
    }
  }

  const InTree& tree_;
  std::uint32_t m_;
  Budget& budget_;
  std::size_t n_;
  std::size_t root_ = 0;
  std::vector<std::vector<std::size_t>> children_;

  std::vector<Cost> start_;
  std::vector<Cost> completion_;
  std::vector<std::uint32_t> machine_;
  std::vector<Cost> alpha_;
  mutable std::vector<Cost> est_;
  Cost remaining_ = 0;
  std::size_t scheduled_ = 0;
  Cost last_start_ = 0;
  std::size_t last_task_ = 0;
  bool any_ = false;

  Cost best_ = kInfeasible;
  std::optional<TreeSchedule> found_;
};

struct TreeNode {
  StepKind kind;
  std::uint32_t i, k, j;
  Cost cost;
  int parent;
  Cost head;  // cost of the path from the root down to and including this node
};

struct OpenCell {
  std::uint32_t j, i;
  int parent;
};

// Outer search: builds task trees top-down from F'_{q,1}. A partial tree
// is bounded by its longest committed root path extended with the best
// unlimited-machine cost of each open sub-chain, and by its work: the root
// runs alone after everything else, which needs at least
// (work - p_root) / m before it.
class ExactSolver {
 public:
  ExactSolver(const JacobianChain& chain, const BnBConfig& config)
      : chain_(chain),
        config_(config),
        m_(config.machines.machines),
        limit_(effective_limit(config.mode, task_memory_limit(config.machines))),
        min_work_(solve_serial(chain, config.mode, limit_)),
        min_path_(solve_unbounded(chain, config.mode, limit_)),
        budget_(config.time_budget_seconds, config.node_limit) {}

  BnBResult run() {
    // Incumbent: the scheduled DP sequence run on the lowest machine of each pool.
    const auto dp = solve_scheduled(chain_, config_.mode, config_.machines);
    witness_ = backtrack(dp, chain_);
    for (auto& step : witness_.steps) step.pool.hi = step.pool.lo;
    incumbent_ = evaluate_makespan(witness_, m_, Occupancy::ExecutingMachine);

    open_.push_back({static_cast<std::uint32_t>(chain_.length()), 1, -1});
    expand();

    BnBResult result;
    result.cost = incumbent_;
    result.witness = std::move(witness_);
    result.status = budget_.exhausted() ? BnBStatus::BudgetExhausted : BnBStatus::Proven;
    result.nodes = budget_.nodes();
    return result;
  }

 private:
  Cost bound() const {
    Cost work = 0;
    Cost path = 0;
    for (const auto& node : nodes_) {
      work += node.cost;
      path = std::max(path, node.head);
    }
    for (const auto& cell : open_) {
      work += min_work_.cost(cell.j, cell.i, 1);
      path = std::max(path, nodes_[static_cast<std::size_t>(cell.parent)].head +
                                min_path_.cost(cell.j, cell.i, 1));
    }
    const Cost root = nodes_.front().cost;
    return std::max(path, root + ceil_div(work - root, m_));
  }

  void branch(StepKind kind, OpenCell cell, std::uint32_t k) {
    TreeNode node{kind, cell.i, k, cell.j, 0, cell.parent, 0};
    EliminationStep step;
    step.kind = kind;
    step.left = cell.i - 1;
    step.split = is_accumulation(kind) ? 0 : k;
    step.right = cell.j;
    node.cost = step_cost(step, chain_, limit_);
    node.head = node.cost + (cell.parent < 0 ? 0 : nodes_[static_cast<std::size_t>(cell.parent)].head);
    nodes_.push_back(node);
    const int id = static_cast<int>(nodes_.size() - 1);

    std::size_t pushed = 0;
    if (kind == StepKind::EliTan || kind == StepKind::EliMul) {
      open_.push_back({k, cell.i, id});
      ++pushed;
    }
    if (kind == StepKind::EliAdj || kind == StepKind::EliMul) {
      open_.push_back({cell.j, k + 1, id});
      ++pushed;
    }
    if (bound() < incumbent_) expand();
    open_.resize(open_.size() - pushed);
    nodes_.pop_back();
  }

  void expand() {
    if (!budget_.tick()) return;
    if (open_.empty()) {
      evaluate_tree();
      return;
    }
    const OpenCell cell = open_.back();
    open_.pop_back();
    if (cell.i == cell.j) {
      const auto mode = accumulation_mode(chain_.element(cell.j), limit_);
      branch(mode == AccumulationMode::Tangent ? StepKind::AccTan : StepKind::AccAdj, cell, 0);
    } else {
      for (std::uint32_t k = cell.i; k < cell.j && !budget_.exhausted(); ++k) {
        if (config_.mode != Mode::Dense) {
          if (limit_.admits(chain_.edge_sum(cell.i, k))) branch(StepKind::EliAdj, cell, k);
          branch(StepKind::EliTan, cell, k);
        }
        branch(StepKind::EliMul, cell, k);
      }
    }
    open_.push_back(cell);
  }

  void evaluate_tree() {
    // Reverse pre-order puts children before their consumer.
    const std::size_t n = nodes_.size();
    InTree tree;
    tree.duration.resize(n);
    tree.successor.resize(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
      const std::size_t task = n - 1 - idx;
      tree.duration[task] = nodes_[idx].cost;
      if (nodes_[idx].parent >= 0) {
        tree.successor[task] = n - 1 - static_cast<std::size_t>(nodes_[idx].parent);
      }
    }
    TreeScheduler scheduler(tree, m_, budget_);
    auto schedule = scheduler.run(incumbent_);
    if (!schedule) return;

    incumbent_ = schedule->makespan;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::pair(schedule->start[a], a) < std::pair(schedule->start[b], b);
    });
    witness_.steps.clear();
    for (auto task : order) {
      const auto& node = nodes_[n - 1 - task];
      EliminationStep step;
      step.kind = node.kind;
      step.left = node.i - 1;
      step.split = is_accumulation(node.kind) ? 0 : node.k;
      step.right = node.j;
      step.pool = {schedule->machine[task], schedule->machine[task]};
      step.cost = node.cost;
      witness_.steps.push_back(step);
    }
  }

  const JacobianChain& chain_;
  const BnBConfig& config_;
  std::uint32_t m_;
  MemoryLimit limit_;
  DPTable min_work_;
  DPTable min_path_;
  Budget budget_;

  std::vector<TreeNode> nodes_;
  std::vector<OpenCell> open_;
  Cost incumbent_ = kInfeasible;
  EliminationSequence witness_;
};

}  // namespace

MemoryLimit task_memory_limit(const MachineConfig& config) {
  return memory_limit_for(config, config.memory_model == MemoryModel::Distributed
                                      ? 1
                                      : config.machines);
}

BnBResult solve_exact(const JacobianChain& chain, const BnBConfig& config) {
  if (config.time_budget_seconds < 0) throw Error("time budget must be nonnegative");
  if (config.machines.machines == 0) throw Error("machine count must be at least 1");
  ExactSolver solver(chain, config);
  return solver.run();
}

std::uint32_t useful_machines(const JacobianChain& chain, Mode mode, MemoryLimit limit) {
  return machines_used(backtrack(solve_unbounded(chain, mode, limit), chain));
}

std::optional<TreeSchedule> schedule_exact(const InTree& tree, std::uint32_t machines,
                                           Cost upper_bound) {
  Budget unlimited(0, 0);
  TreeScheduler scheduler(tree, machines, unlimited);
  return scheduler.run(upper_bound);
}

}  // namespace jcdp
