#include <doctest.h>

#include "jcdp/rational.hpp"

using namespace jcdp;

TEST_CASE("quality ratio") {
  CHECK(quality_ratio(60, 60).is_one());
  CHECK(quality_ratio(60, 60).to_decimal(6) == "1.000000");
  CHECK(quality_ratio(9, 12) == Ratio(3, 4));
  CHECK(quality_ratio(9, 12).to_decimal(2) == "0.75");
  CHECK(quality_ratio(9, 12).to_double() == doctest::Approx(0.75));
  CHECK_THROWS_AS(quality_ratio(13, 12), Error);
  CHECK_THROWS_AS(quality_ratio(0, 12), Error);
  CHECK_THROWS_AS(Ratio(1, 0), Error);
}

TEST_CASE("exact ordering without floating point") {
  const Ratio a(UINT64_MAX - 1, UINT64_MAX);
  const Ratio b(UINT64_MAX - 2, UINT64_MAX - 1);
  CHECK(b < a);
  CHECK(Ratio(1, 3) < Ratio(1, 2));
  CHECK(Ratio(2, 4) == Ratio(1, 2));
}

TEST_CASE("decimal rendering rounds half up") {
  CHECK(Ratio(2, 3).to_decimal(3) == "0.667");
  CHECK(Ratio(1, 8).to_decimal(2) == "0.13");
  CHECK(Ratio(1, 3).to_decimal(0) == "0");
  CHECK(Ratio(99999, 100000).to_decimal(3) == "1.000");
}

TEST_CASE("table style") {
  CHECK(table_decimal(Ratio(1, 1)) == "1");
  CHECK(table_decimal(Ratio(987, 1000)) == ".987");
  CHECK(table_decimal(Ratio(9999, 10000)) == "1.00");
  CHECK(table_decimal(Ratio(1, 2)) == ".500");
}
