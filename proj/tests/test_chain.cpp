#include <doctest.h>

#include "jcdp/chain.hpp"
#include "oracles.hpp"

using namespace jcdp;

namespace {
JacobianChain two_chain() { return JacobianChain({{1, 3, 4, 10}, {2, 4, 2, 20}}); }
}  // namespace

TEST_CASE("accumulation cost picks the cheaper mode when the tape fits") {
  CHECK(accumulation_cost({1, 6, 4, 100}, MemoryLimit::unlimited()) == 400);
  CHECK(accumulation_cost({1, 6, 4, 100}, MemoryLimit(50)) == 600);
  CHECK(accumulation_cost({1, 1, 1, 1}, MemoryLimit::unlimited()) == 1);
  CHECK(accumulation_mode({1, 6, 4, 100}, MemoryLimit::unlimited()) == AccumulationMode::Adjoint);
  CHECK(accumulation_mode({1, 6, 4, 100}, MemoryLimit(50)) == AccumulationMode::Tangent);
  // tape exactly at the limit is admitted
  CHECK(accumulation_cost({1, 6, 4, 100}, MemoryLimit(100)) == 400);
}

TEST_CASE("equal tangent and adjoint costs resolve to tangent") {
  CHECK(accumulation_mode({1, 5, 5, 7}, MemoryLimit::unlimited()) == AccumulationMode::Tangent);
}

TEST_CASE("multiply cost against a counted triple loop") {
  CHECK(multiply_cost(3, 4, 5) == 60);
  CHECK(multiply_cost(1, 1, 1) == 1);
  CHECK(multiply_cost(2, 4, 3) == 24);
  CHECK(multiply_cost(2, 4, 3) == oracle::counted_fma(2, 4, 3));
  for (std::uint64_t r = 1; r <= 5; ++r) {
    for (std::uint64_t k = 1; k <= 5; ++k) {
      for (std::uint64_t c = 1; c <= 5; ++c) CHECK(multiply_cost(r, k, c) == oracle::counted_fma(r, k, c));
    }
  }
}

TEST_CASE("edge sums") {
  const JacobianChain c({{1, 2, 2, 10}, {2, 2, 2, 20}, {3, 2, 2, 30}});
  CHECK(edge_sum(c, 1, 3) == 60);
  CHECK(edge_sum(c, 2, 2) == 20);
  const JacobianChain d({{1, 2, 2, 1000}, {2, 2, 2, 9999}});
  CHECK(edge_sum(d, 1, 2) == 10999);
  CHECK_THROWS_AS(c.edge_sum(0, 2), Error);
  CHECK_THROWS_AS(c.edge_sum(3, 2), Error);
}

TEST_CASE("chain validation") {
  CHECK_THROWS_AS(JacobianChain({}), Error);
  CHECK_THROWS_AS(JacobianChain({{1, 3, 4, 10}, {2, 5, 2, 20}}), Error);  // 5 != 4
  CHECK_THROWS_AS(JacobianChain({{1, 0, 4, 10}}), Error);
  CHECK_THROWS_AS(JacobianChain({{1, 3, 4, 0}}), Error);
  CHECK_THROWS_AS(JacobianChain({{2, 3, 4, 10}}), Error);
  CHECK_NOTHROW(two_chain());
  CHECK(two_chain().element(2).m == 2);
  CHECK_THROWS_AS(two_chain().element(0), Error);
  CHECK_THROWS_AS(two_chain().element(3), Error);
}

TEST_CASE("checked arithmetic refuses to wrap or reach the sentinel") {
  CHECK(checked_add(1, 2) == 3);
  CHECK(checked_mul(1u << 20, 1u << 20) == (1ull << 40));
  CHECK_THROWS_AS(checked_add(kInfeasible - 1, 1), OverflowError);
  CHECK_THROWS_AS(checked_mul(1ull << 32, 1ull << 32), OverflowError);
  CHECK(checked_mul(0, kInfeasible - 1) == 0);
}

TEST_CASE("memory limit raw value 0 means unlimited") {
  CHECK(MemoryLimit::from_raw(0).is_unlimited());
  CHECK(MemoryLimit::from_raw(0).admits(kInfeasible - 1));
  CHECK(MemoryLimit::from_raw(5).raw() == 5);
  CHECK_FALSE(MemoryLimit::from_raw(5).admits(6));
}

TEST_CASE("chain text round trip") {
  const auto c = two_chain();
  const auto text = to_text(c);
  CHECK(text == "q 2\n1 3 4 10\n2 4 2 20\n");
  CHECK(parse_chain(text) == c);
  CHECK_THROWS_AS(parse_chain("q 2\n1 3 4 10\n"), ParseError);
  CHECK_THROWS_AS(parse_chain("q 1\n1 3 x 10\n"), ParseError);
  CHECK_THROWS_AS(parse_chain(""), ParseError);
}
