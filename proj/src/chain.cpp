#include "jcdp/chain.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "text_util.hpp"

namespace jcdp {

Cost checked_add(Cost a, Cost b) {
  Cost out = 0;
  if (__builtin_add_overflow(a, b, &out) || out == kInfeasible) {
    throw OverflowError("fma count overflow in addition");
  }
  return out;
}

Cost checked_mul(Cost a, Cost b) {
  Cost out = 0;
  if (__builtin_mul_overflow(a, b, &out) || out == kInfeasible) {
    throw OverflowError("fma count overflow in multiplication");
  }
  return out;
}

JacobianChain::JacobianChain(std::vector<ElementalFunction> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw Error("Jacobian chain must contain at least one elemental function");
  }
  prefix_edges_.assign(elements_.size() + 1, 0);
  for (std::size_t pos = 0; pos < elements_.size(); ++pos) {
    const auto& f = elements_[pos];
    if (f.index != pos + 1) {
      throw Error("elemental function " + std::to_string(pos + 1) + " has index " +
                  std::to_string(f.index));
    }
    if (f.n == 0 || f.m == 0 || f.edges == 0) {
      throw Error("elemental function " + std::to_string(f.index) +
                  " needs positive n, m and edges");
    }
    if (pos > 0 && f.n != elements_[pos - 1].m) {
      throw Error("elemental function " + std::to_string(f.index) + " has n=" +
                  std::to_string(f.n) + " but its predecessor has m=" +
                  std::to_string(elements_[pos - 1].m));
    }
    prefix_edges_[pos + 1] = checked_add(prefix_edges_[pos], f.edges);
  }
}

const ElementalFunction& JacobianChain::element(std::size_t i) const {
  if (i == 0 || i > elements_.size()) {
    throw Error("element index " + std::to_string(i) + " out of range");
  }
  return elements_[i - 1];
}

Cost JacobianChain::edge_sum(std::size_t low, std::size_t high) const {
  if (low == 0 || low > high || high > elements_.size()) {
    throw Error("edge_sum range [" + std::to_string(low) + ", " + std::to_string(high) +
                "] out of range");
  }
  return prefix_edges_[high] - prefix_edges_[low - 1];
}

AccumulationMode accumulation_mode(const ElementalFunction& f, MemoryLimit limit) {
  if (!limit.admits(f.edges)) return AccumulationMode::Tangent;
  return f.m < f.n ? AccumulationMode::Adjoint : AccumulationMode::Tangent;
}

Cost accumulation_cost(const ElementalFunction& f, MemoryLimit limit) {
  const auto width = accumulation_mode(f, limit) == AccumulationMode::Tangent ? f.n : f.m;
  return checked_mul(f.edges, width);
}

Cost multiply_cost(std::uint64_t rows, std::uint64_t inner, std::uint64_t cols) {
  return checked_mul(checked_mul(rows, inner), cols);
}

std::string to_text(const JacobianChain& chain) {
  std::ostringstream out;
  out << "q " << chain.length() << '\n';
  for (const auto& f : chain.elements()) {
    out << f.index << ' ' << f.n << ' ' << f.m << ' ' << f.edges << '\n';
  }
  return out.str();
}

JacobianChain parse_chain(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::size_t line_no = 0;
  std::optional<std::size_t> length;
  std::vector<ElementalFunction> elements;
  for (const auto& raw : lines) {
    ++line_no;
    const auto fields = detail::split_fields(raw);
    if (fields.empty()) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (!length) {
      if (fields.size() != 2 || fields[0] != "q") {
        throw ParseError(where + "expected header \"q <length>\"");
      }
      length = detail::parse_uint(fields[1], where + "q");
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError(where + "expected \"index n m edges\"");
    }
    ElementalFunction f;
    f.index = detail::parse_uint(fields[0], where + "index");
    f.n = detail::parse_uint(fields[1], where + "n");
    f.m = detail::parse_uint(fields[2], where + "m");
    f.edges = detail::parse_uint(fields[3], where + "edges");
    elements.push_back(f);
  }
  if (!length) throw ParseError("missing header \"q <length>\"");
  if (elements.size() != *length) {
    throw ParseError("header announces " + std::to_string(*length) + " elements, found " +
                     std::to_string(elements.size()));
  }
  return JacobianChain(std::move(elements));
}

}  // namespace jcdp
