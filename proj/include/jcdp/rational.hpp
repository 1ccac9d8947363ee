#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "jcdp/chain.hpp"

namespace jcdp {

/// Exact nonnegative fraction of two fma counts, kept in lowest terms.
class Ratio {
 public:
  Ratio() = default;
  /// Throws Error when den == 0.
  Ratio(std::uint64_t num, std::uint64_t den);

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  bool is_one() const { return num_ == den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// Correctly rounded (half up) decimal with `digits` fractional digits.
  std::string to_decimal(int digits) const;

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

 private:
  std::uint64_t num_ = 1;
  std::uint64_t den_ = 1;
};

/// C^{(m)} = fma_opt / fma_dp. Throws Error unless 0 < fma_opt <= fma_dp.
Ratio quality_ratio(Cost fma_opt, Cost fma_dp);

/// Table-style rendering of a value in [0, 1]: "1" when exact, ".987"
/// otherwise, "1.00" when it only rounds to one.
std::string table_decimal(const Ratio& r);

}  // namespace jcdp
