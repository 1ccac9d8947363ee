#include <doctest.h>

#include <random>

#include "jcdp/dp.hpp"
#include "jcdp/sequence.hpp"
#include "oracles.hpp"

using namespace jcdp;

namespace {

JacobianChain two_chain() { return JacobianChain({{1, 3, 4, 10}, {2, 4, 2, 20}}); }

constexpr Mode kModes[] = {Mode::Dense, Mode::MatrixFree, Mode::LimitedMemoryMatrixFree};

MachineConfig machines(std::uint32_t m, std::uint64_t memory = 0,
                       MemoryModel model = MemoryModel::Distributed) {
  return {m, memory, model};
}

Cost critical_path(const EliminationSequence& seq) {
  const auto g = build_task_graph(seq);
  std::vector<Cost> finish(g.nodes.size(), 0);
  std::vector<Cost> ready(g.nodes.size(), 0);
  for (std::size_t s = 0; s < g.nodes.size(); ++s) {
    finish[s] = ready[s] + g.nodes[s].cost;
    if (g.successor[s]) ready[*g.successor[s]] = std::max(ready[*g.successor[s]], finish[s]);
  }
  return finish[g.root()];
}

}  // namespace

TEST_CASE("serial DP on the two-element chain") {
  const auto c = two_chain();
  CHECK(solve_serial(c, Mode::Dense, MemoryLimit::unlimited()).root_cost() == 94);
  CHECK(solve_serial(c, Mode::MatrixFree, MemoryLimit::unlimited()).root_cost() == 60);
  CHECK(oracle::serial_optimum(c, Mode::Dense, MemoryLimit::unlimited()) == 94);
  CHECK(oracle::serial_optimum(c, Mode::MatrixFree, MemoryLimit::unlimited()) == 60);

  const auto seq = backtrack(solve_serial(c, Mode::MatrixFree, MemoryLimit::unlimited()), c);
  REQUIRE(seq.size() == 2);
  CHECK(format_step(seq.steps[0]) == "ACC ADJ (1 2) [1]");
  CHECK(format_step(seq.steps[1]) == "ELI ADJ (0 1 2) [1]");
}

TEST_CASE("single element chains cost one accumulation in every variant") {
  const JacobianChain c({{1, 5, 7, 100}});
  for (auto mode : kModes) {
    CHECK(solve_serial(c, mode, MemoryLimit::unlimited()).root_cost() == 500);
    CHECK(solve_scheduled(c, mode, machines(3)).root_cost() == 500);
    CHECK(solve_unbounded(c, mode, MemoryLimit::unlimited()).root_cost() == 500);
  }
}

TEST_CASE("scheduled DP on the two-element chain") {
  const auto c = two_chain();
  const auto dense = solve_scheduled(c, Mode::Dense, machines(2));
  CHECK(dense.root_cost() == 64);
  CHECK(solve_scheduled(c, Mode::MatrixFree, machines(2)).root_cost() == 60);
  CHECK(oracle::scheduled_optimum(c, Mode::Dense, MemoryLimit::unlimited(), 2) == 64);
  CHECK(oracle::scheduled_optimum(c, Mode::MatrixFree, MemoryLimit::unlimited(), 2) == 60);

  const auto seq = backtrack(dense, c);
  REQUIRE(seq.size() == 3);
  CHECK(format_sequence(seq) == "1: ACC ADJ (1 2) [1]\n2: ACC TAN (0 1) [2]\n3: ELI MUL (0 1 2) [1,2]\n");
  CHECK(evaluate_makespan(seq, 2) == 64);
}

TEST_CASE("per-thread memory limits") {
  CHECK(memory_limit_for(machines(4, 100), 3) == MemoryLimit(25));
  CHECK(memory_limit_for(machines(4, 100, MemoryModel::Shared), 3) == MemoryLimit(75));
  CHECK(memory_limit_for(machines(4, 0), 3).is_unlimited());
  CHECK(memory_limit_for(machines(4, 0, MemoryModel::Shared), 2).is_unlimited());
  CHECK_THROWS_AS(memory_limit_for(machines(4, 100), 0), Error);
  CHECK_THROWS_AS(memory_limit_for(machines(4, 100), 5), Error);
  CHECK(effective_limit(Mode::Dense, MemoryLimit(3)).is_unlimited());
  CHECK(effective_limit(Mode::MatrixFree, MemoryLimit(3)).is_unlimited());
  CHECK(effective_limit(Mode::LimitedMemoryMatrixFree, MemoryLimit(3)) == MemoryLimit(3));
}

TEST_CASE("limited memory forbids adjoint sweeps that do not fit") {
  const auto c = two_chain();
  // tape 10 for F'_1 does not fit into 9: best is tangent propagation
  CHECK(solve_serial(c, Mode::LimitedMemoryMatrixFree, MemoryLimit(9)).root_cost() ==
        oracle::serial_optimum(c, Mode::LimitedMemoryMatrixFree, MemoryLimit(9)));
  CHECK(solve_serial(c, Mode::LimitedMemoryMatrixFree, MemoryLimit(9)).root_cost() > 60);
  // the optimum accumulates F'_2 in adjoint mode, tape 20
  CHECK(solve_serial(c, Mode::LimitedMemoryMatrixFree, MemoryLimit(19)).root_cost() > 60);
  CHECK(solve_serial(c, Mode::LimitedMemoryMatrixFree, MemoryLimit(20)).root_cost() == 60);
  // dense and unlimited matrix-free ignore the limit
  CHECK(solve_serial(c, Mode::Dense, MemoryLimit(1)).root_cost() == 94);
  CHECK(solve_serial(c, Mode::MatrixFree, MemoryLimit(1)).root_cost() == 60);
}

TEST_CASE("ties keep the earliest alternative") {
  // k=1: adjoint and tangent elimination both cost 40, multiplication 48
  const JacobianChain c({{1, 2, 2, 10}, {2, 2, 2, 10}});
  const auto t = solve_serial(c, Mode::MatrixFree, MemoryLimit::unlimited());
  CHECK(t.root_cost() == 40);
  CHECK(t.decision(2, 1, 1).kind == DecisionKind::EliAdj);
  CHECK(t.decision(1, 1, 1).kind == DecisionKind::AccTan);
}

TEST_CASE("overflow is reported, not wrapped") {
  const JacobianChain c({{1, 1ull << 31, 1ull << 31, 1ull << 40}, {2, 1ull << 31, 2, 1}});
  CHECK_THROWS_AS(solve_serial(c, Mode::Dense, MemoryLimit::unlimited()), OverflowError);
}

TEST_CASE("serial DP equals the state-space oracle on random chains") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto q = 1 + rng() % 5;
    const auto c = oracle::random_chain(rng, q, 1, 9, 1, 60);
    const auto mode = kModes[trial % 3];
    const auto limit = (trial % 2) ? MemoryLimit(20 + rng() % 80) : MemoryLimit::unlimited();
    CAPTURE(to_text(c));
    CAPTURE(limit.raw());
    REQUIRE(solve_serial(c, mode, limit).root_cost() == oracle::serial_optimum(c, mode, limit));
  }
}

TEST_CASE("scheduled DP is feasible and optimal at m = q against the schedule oracle") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 120; ++trial) {
    const auto q = 1 + rng() % 3;
    const auto c = oracle::random_chain(rng, q, 1, 9, 1, 60);
    const auto mode = kModes[trial % 3];
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng() % 3);
    CAPTURE(to_text(c));
    CAPTURE(m);
    const auto dp = solve_scheduled(c, mode, machines(m)).root_cost();
    const auto opt = oracle::scheduled_optimum(c, mode, MemoryLimit::unlimited(), m);
    CHECK(opt <= dp);
    if (m >= q) CHECK(opt == dp);
  }
}

TEST_CASE("m = 1 collapses onto the serial table cell for cell") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto q = 1 + rng() % 7;
    const auto c = oracle::random_chain(rng, q, 1, 50, 1, 1000);
    const auto mode = kModes[trial % 3];
    const std::uint64_t memory = (trial % 2) ? 500 + rng() % 2000 : 0;
    const auto serial = solve_serial(c, mode, MemoryLimit::from_raw(memory));
    const auto sched = solve_scheduled(c, mode, machines(1, memory));
    for (std::size_t j = 1; j <= q; ++j) {
      for (std::size_t i = 1; i <= j; ++i) {
        REQUIRE(serial.cost(j, i, 1) == sched.cost(j, i, 1));
        REQUIRE(serial.decision(j, i, 1) == sched.decision(j, i, 1));
      }
    }
    CHECK(solve(c, {mode, false}, machines(4, memory)).root_cost() ==
          solve_serial(c, mode, memory_limit_for(machines(4, memory), 1)).root_cost());
  }
}

TEST_CASE("more threads never cost more, with unbounded as the floor") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto q = 1 + rng() % 8;
    const auto c = oracle::random_chain(rng, q, 1, 50, 1, 1000);
    const auto mode = kModes[trial % 2];  // limits fixed across m
    const auto table = solve_scheduled(c, mode, machines(static_cast<std::uint32_t>(q)));
    for (std::size_t j = 1; j <= q; ++j) {
      for (std::size_t i = 1; i <= j; ++i) {
        const auto costs = table.costs(j, i);
        for (std::size_t t = 1; t < costs.size(); ++t) REQUIRE(costs[t] <= costs[t - 1]);
      }
    }
    const auto unbounded = solve_unbounded(c, mode, MemoryLimit::unlimited());
    CHECK(unbounded.root_cost() == table.root_cost());
    for (std::uint32_t m = 1; m < q; ++m) {
      CHECK(solve_scheduled(c, mode, machines(m)).root_cost() >= unbounded.root_cost());
    }
    CHECK(solve_scheduled(c, mode, machines(static_cast<std::uint32_t>(q + 3))).root_cost() ==
          table.root_cost());
  }
}

TEST_CASE("backtracked sequences are valid and reproduce the table cost") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 150; ++trial) {
    const auto q = 1 + rng() % 7;
    const auto c = oracle::random_chain(rng, q, 1, 50, 1, 1000);
    const auto mode = kModes[trial % 3];
    const std::uint64_t memory = (trial % 3 == 2) ? 500 + rng() % 3000 : 0;
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng() % 5);
    const auto model = (trial % 2) ? MemoryModel::Shared : MemoryModel::Distributed;
    CAPTURE(to_text(c));

    const auto serial_table = solve_serial(c, mode, MemoryLimit::from_raw(memory));
    const auto serial = backtrack(serial_table, c);
    REQUIRE(validate(serial, c).ok);
    Cost total = 0;
    for (const auto& s : serial.steps) total += s.cost;
    CHECK(total == serial_table.root_cost());
    CHECK(evaluate_makespan(serial, 1) == serial_table.root_cost());
    CHECK(machines_used(serial) == 1);

    const auto table = solve_scheduled(c, mode, machines(m, memory, model));
    const auto seq = backtrack(table, c);
    REQUIRE(validate(seq, c).ok);
    CHECK(seq.size() <= 2 * q - 1);
    CHECK(evaluate_makespan(seq, m) == table.root_cost());
    CHECK(machines_used(seq) <= std::min<std::size_t>(m, q));
    for (const auto& s : seq.steps) {
      CHECK(s.pool.hi <= table.max_threads());
      CHECK(s.pool.lo <= s.pool.hi);
    }

    const auto ub_table = solve_unbounded(c, mode, MemoryLimit::unlimited());
    const auto ub = backtrack(ub_table, c);
    REQUIRE(validate(ub, c).ok);
    CHECK(critical_path(ub) == ub_table.root_cost());
    CHECK(evaluate_makespan(ub, machines_used(ub)) == ub_table.root_cost());
  }
}

TEST_CASE("backtrack rejects a table that does not match the chain") {
  const auto c = two_chain();
  const auto t = solve_serial(c, Mode::Dense, MemoryLimit::unlimited());
  CHECK_THROWS_AS(backtrack(t, JacobianChain({{1, 3, 4, 10}})), Error);
  DPTable broken(2, 1, Mode::Dense, {MemoryLimit::unlimited()});
  CHECK_THROWS_AS(backtrack(broken, c), Error);
}
