#include "sq3/sparse.hpp"

#include <algorithm>
#include <limits>

#include "sq3/errors.hpp"

namespace sq3 {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {
  if (cols > std::numeric_limits<std::uint32_t>::max()) throw InvalidArgument("SparseMatrix: too many columns");
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
  SparseMatrix m(rows, cols);
  for (const auto& t : triplets) {
    if (t.row >= rows || t.col >= cols) throw InvalidArgument("SparseMatrix: triplet out of range");
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

  m.col_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::size_t i = 0;
  for (std::size_t row = 0; row < rows; ++row) {
    while (i < triplets.size() && triplets[i].row == row) {
      const std::size_t col = triplets[i].col;
      Complex v = 0.0;
      while (i < triplets.size() && triplets[i].row == row && triplets[i].col == col) v += triplets[i++].value;
      if (v != Complex{0.0}) {
        m.col_idx_.push_back(static_cast<std::uint32_t>(col));
        m.values_.push_back(v);
      }
    }
    m.row_ptr_[row + 1] = m.values_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t));
}

void SparseMatrix::apply(std::span<const Complex> x, std::span<Complex> y) const { kernels::csr_matvec(view(), x, y); }

std::vector<Complex> SparseMatrix::apply(std::span<const Complex> x) const {
  std::vector<Complex> y(rows_);
  apply(x, y);
  return y;
}

Complex SparseMatrix::at(std::size_t row, std::size_t col) const {
  const auto begin = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto end = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  const auto it = std::lower_bound(begin, end, static_cast<std::uint32_t>(col));
  if (it == end || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t row = 0; row < rows_; ++row)
    for (std::size_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) out.push_back({row, col_idx_[k], values_[k]});
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  auto t = triplets();
  for (auto& e : t) std::swap(e.row, e.col);
  return from_triplets(cols_, rows_, std::move(t));
}

SparseMatrix SparseMatrix::adjoint() const {
  auto t = triplets();
  for (auto& e : t) {
    std::swap(e.row, e.col);
    e.value = std::conj(e.value);
  }
  return from_triplets(cols_, rows_, std::move(t));
}

double SparseMatrix::norm1() const {
  std::vector<double> col_sum(cols_, 0.0);
  for (std::size_t k = 0; k < values_.size(); ++k) col_sum[col_idx_[k]] += std::abs(values_[k]);
  return col_sum.empty() ? 0.0 : *std::max_element(col_sum.begin(), col_sum.end());
}

double SparseMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t row = 0; row < rows_; ++row) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) s += std::abs(values_[k]);
    best = std::max(best, s);
  }
  return best;
}

double SparseMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& v : values_) best = std::max(best, std::abs(v));
  return best;
}

kernels::CsrView SparseMatrix::view() const noexcept { return {rows_, cols_, row_ptr_, col_idx_, values_}; }

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("SparseMatrix +: shape mismatch");
  auto t = a.triplets();
  auto tb = b.triplets();
  t.insert(t.end(), tb.begin(), tb.end());
  return SparseMatrix::from_triplets(a.rows_, a.cols_, std::move(t));
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + Complex{-1.0} * b; }

SparseMatrix operator*(Complex s, const SparseMatrix& a) {
  if (s == Complex{0.0}) return SparseMatrix(a.rows_, a.cols_);
  SparseMatrix m = a;
  for (auto& v : m.values_) v *= s;
  return m;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("SparseMatrix *: shape mismatch");
  // Row-by-row accumulation into a dense scratch row.
  std::vector<Complex> acc(b.cols_, 0.0);
  std::vector<char> used(b.cols_, 0);
  std::vector<std::size_t> touched;
  std::vector<Triplet> out;
  for (std::size_t row = 0; row < a.rows_; ++row) {
    touched.clear();
    for (std::size_t ka = a.row_ptr_[row]; ka < a.row_ptr_[row + 1]; ++ka) {
      const std::size_t mid = a.col_idx_[ka];
      for (std::size_t kb = b.row_ptr_[mid]; kb < b.row_ptr_[mid + 1]; ++kb) {
        const std::size_t col = b.col_idx_[kb];
        if (!used[col]) {
          used[col] = 1;
          touched.push_back(col);
        }
        acc[col] += a.values_[ka] * b.values_[kb];
      }
    }
    for (std::size_t col : touched) {
      out.push_back({row, col, acc[col]});
      acc[col] = 0.0;
      used[col] = 0;
    }
  }
  return SparseMatrix::from_triplets(a.rows_, b.cols_, std::move(out));
}

}  // namespace sq3
