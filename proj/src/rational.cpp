#include "jcdp/rational.hpp"

#include <numeric>

namespace jcdp {

namespace {
__extension__ using u128 = unsigned __int128;
}

Ratio::Ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error("ratio with zero denominator");
  const auto g = std::gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  const u128 lhs = static_cast<u128>(a.num_) * b.den_;
  const u128 rhs = static_cast<u128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

std::string Ratio::to_decimal(int digits) const {
  u128 scale = 1;
  for (int d = 0; d < digits; ++d) scale *= 10;
  const u128 scaled = (static_cast<u128>(num_) * scale * 2 + den_) /
                                   (static_cast<u128>(den_) * 2);
  const auto whole = static_cast<std::uint64_t>(scaled / scale);
  auto frac = static_cast<std::uint64_t>(scaled % scale);
  std::string out = std::to_string(whole);
  if (digits > 0) {
    std::string tail(static_cast<std::size_t>(digits), '0');
    for (int d = digits - 1; d >= 0; --d) {
      tail[static_cast<std::size_t>(d)] = static_cast<char>('0' + frac % 10);
      frac /= 10;
    }
    out += "." + tail;
  }
  return out;
}

Ratio quality_ratio(Cost fma_opt, Cost fma_dp) {
  if (fma_opt == 0 || fma_dp == 0) throw Error("quality ratio needs positive costs");
  if (fma_opt > fma_dp) {
    throw Error("optimum " + std::to_string(fma_opt) + " exceeds the DP cost " +
                std::to_string(fma_dp));
  }
  return Ratio(fma_opt, fma_dp);
}

std::string table_decimal(const Ratio& r) {
  if (r.is_one()) return "1";
  auto text = r.to_decimal(3);
  if (text == "1.000") return "1.00";
  if (text.starts_with("0.")) return text.substr(1);  // "0.987" -> ".987"
  return text;
}

}  // namespace jcdp
