#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sq3/kernels.hpp"

namespace sq3 {

using Complex = std::complex<double>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  Complex value;
};

/// Complex CSR matrix. Column indices within a row are sorted and unique;
/// explicit zeros are dropped.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  /// Duplicate (row, col) entries are summed.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  /// y = A x
  void apply(std::span<const Complex> x, std::span<Complex> y) const;
  std::vector<Complex> apply(std::span<const Complex> x) const;

  /// Entry lookup; zero when not stored.
  Complex at(std::size_t row, std::size_t col) const;

  SparseMatrix adjoint() const;
  SparseMatrix transpose() const;

  /// Maximum absolute column sum.
  double norm1() const;
  /// Maximum absolute row sum.
  double norm_inf() const;
  double max_abs() const;

  kernels::CsrView view() const noexcept;
  std::vector<Triplet> triplets() const;

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator*(Complex s, const SparseMatrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> col_idx_;
  std::vector<Complex> values_;
};

}  // namespace sq3
