#pragma once

// Batch experiments: DP makespan vs. exact optimum per (instance, m),
// aggregation into mean/min/percent-optimal tables, CSV output.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "jcdp/bnb.hpp"
#include "jcdp/generator.hpp"
#include "jcdp/rational.hpp"

namespace jcdp {

enum class RecordStatus { Proven, BudgetExhausted, Error };

std::string_view status_name(RecordStatus status);

struct BenchRecord {
  std::uint64_t instance = 0;
  std::size_t q = 0;
  std::uint32_t m = 1;
  Cost fma_dp = 0;
  Cost fma_opt = 0;  ///< incumbent (upper bound) when the budget ran out
  RecordStatus status = RecordStatus::Proven;
  Ratio ratio;       ///< fma_opt / fma_dp, 1 for error records
  std::uint32_t useful_machines = 0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct BatchConfig {
  GeneratorConfig generator;
  std::vector<std::uint32_t> machines;  ///< machine counts evaluated per chain
  std::size_t count = 1;
  Mode mode = Mode::LimitedMemoryMatrixFree;
  std::uint64_t memory_limit = 0;  ///< total, 0 = unlimited
  MemoryModel memory_model = MemoryModel::Distributed;
  double time_budget_seconds = 0;
  std::uint64_t node_limit = 0;
  unsigned jobs = 1;
};

/// Instance `id` is generated from instance_seed(generator.seed, id).
/// Records come back ordered by (instance, position in `machines`)
/// regardless of `jobs`. Solver failures become Error records and are
/// reported on `log` when given.
std::vector<BenchRecord> run_batch(const BatchConfig& config, std::ostream* log = nullptr);

using ExactRational = boost::multiprecision::cpp_rational;

struct AggregateCell {
  std::size_t q = 0;
  std::uint32_t m = 0;
  ExactRational mean;
  Ratio min;
  std::size_t optimal = 0;  ///< records with ratio == 1
  std::size_t samples = 0;  ///< proven records
  std::size_t excluded = 0; ///< budget-exhausted or failed records

  /// optimal / samples * 100
  double percent_optimal() const;
  std::string mean_text() const;  ///< table style, e.g. ".965"
};

struct AggregateTable {
  std::vector<AggregateCell> cells;  ///< sorted by (q, m)
  std::vector<std::string> notes;    ///< cells omitted for lack of proven records

  const AggregateCell* find(std::size_t q, std::uint32_t m) const;
};

/// Proven records only.
AggregateTable aggregate(const std::vector<BenchRecord>& records);

/// Average, minimum and percent-optimal tables, rows q and columns m.
std::string format_tables(const AggregateTable& table);

inline constexpr std::string_view kCsvHeader =
    "instance,q,m,fma_dp,fma_opt,status,ratio,useful_machines";

std::string to_csv(const std::vector<BenchRecord>& records);
/// Throws Error on I/O failure.
void write_csv(const std::vector<BenchRecord>& records, const std::string& path);
/// Inverse of to_csv; the ratio column is recomputed exactly from the
/// costs. Throws ParseError with the line number on malformed input.
std::vector<BenchRecord> parse_csv(std::string_view text);

}  // namespace jcdp
