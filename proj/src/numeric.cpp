#include "jcdp/numeric.hpp"

#include <map>

namespace jcdp {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw Error("matrix data does not match its shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t d = 0; d < n; ++d) out(d, d) = 1;
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error("matrix product shape mismatch: " + std::to_string(a.rows()) + "x" +
                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                std::to_string(b.cols()));
  }
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        std::int64_t term = 0;
        if (__builtin_mul_overflow(a(r, k), b(k, c), &term) ||
            __builtin_add_overflow(acc, term, &acc)) {
          throw OverflowError("integer overflow in matrix product");
        }
      }
      out(r, c) = acc;
    }
  }
  return out;
}

IntMatrix chain_product(std::span<const IntMatrix> entries) {
  if (entries.empty()) throw Error("empty chain");
  IntMatrix acc = entries[0];
  for (std::size_t i = 1; i < entries.size(); ++i) acc = entries[i] * acc;
  return acc;
}

IntMatrix execute_numeric(const EliminationSequence& seq, const JacobianChain& chain,
                          std::span<const IntMatrix> entries) {
  if (entries.size() != chain.length()) {
    throw Error("expected " + std::to_string(chain.length()) + " elemental matrices");
  }
  for (std::size_t i = 1; i <= chain.length(); ++i) {
    const auto& f = chain.element(i);
    if (entries[i - 1].rows() != f.m || entries[i - 1].cols() != f.n) {
      throw Error("elemental matrix " + std::to_string(i) + " must be " + std::to_string(f.m) +
                  "x" + std::to_string(f.n));
    }
  }
  if (auto check = validate(seq, chain); !check) throw InvalidSequenceError(check.message);

  // F'_i for 1-based i.
  auto elemental = [&](std::uint32_t i) -> const IntMatrix& { return entries[i - 1]; };
  std::map<JacobianSpan, IntMatrix> stored;
  auto take = [&](JacobianSpan s) {
    auto node = stored.extract(s);
    return std::move(node.mapped());
  };

  for (const auto& step : seq.steps) {
    IntMatrix result;
    switch (step.kind) {
      case StepKind::AccTan:
      case StepKind::AccAdj:
        result = elemental(step.right);
        break;
      case StepKind::EliTan:
        // Tangent sweep through F_{k+1}, ..., F_j seeded with F'_{k,i}.
        result = take({step.left, step.split});
        for (auto nu = step.split + 1; nu <= step.right; ++nu) result = elemental(nu) * result;
        break;
      case StepKind::EliAdj:
        // Adjoint sweep through F_k, ..., F_i seeded with F'_{j,k+1}.
        result = take({step.split, step.right});
        for (auto nu = step.split; nu > step.left; --nu) result = result * elemental(nu);
        break;
      case StepKind::EliMul: {
        auto upper = take({step.split, step.right});
        result = upper * take({step.left, step.split});
        break;
      }
    }
    stored.emplace(step.produces(), std::move(result));
  }
  return take({0, static_cast<std::uint32_t>(chain.length())});
}

}  // namespace jcdp
