#pragma once

// Exact integer execution of elimination sequences, used to certify that a
// sequence computes F'_q * ... * F'_1.

#include <cstdint>
#include <span>
#include <vector>

#include "jcdp/chain.hpp"
#include "jcdp/sequence.hpp"

namespace jcdp {

/// Dense row-major integer matrix. Products throw OverflowError instead of
/// wrapping.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Interprets each step as exact linear algebra on the elemental matrices
/// (entries[i-1] is F'_i with shape m_i x n_i) and returns the root
/// Jacobian. Throws Error on shape mismatch or an invalid sequence.
IntMatrix execute_numeric(const EliminationSequence& seq, const JacobianChain& chain,
                          std::span<const IntMatrix> entries);

/// F'_q * ... * F'_1 evaluated directly, right to left.
IntMatrix chain_product(std::span<const IntMatrix> entries);

}  // namespace jcdp
