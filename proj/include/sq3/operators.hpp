#pragma once

#include <memory>
#include <vector>

#include "sq3/fock_basis.hpp"
#include "sq3/sparse.hpp"

namespace sq3 {

enum class OperatorKind { annihilation, creation, number };

/// a_i, a_i^dagger or a_i^dagger a_i embedded in the three-mode space.
class ModeOperator {
 public:
  const SparseMatrix& matrix() const noexcept { return *matrix_; }
  std::shared_ptr<const SparseMatrix> shared_matrix() const noexcept { return matrix_; }
  OperatorKind kind() const noexcept { return kind_; }
  int mode() const noexcept { return mode_; }

  friend ModeOperator build_mode_operator(FockCutoff cutoff, OperatorKind kind, int mode);

 private:
  ModeOperator(std::shared_ptr<const SparseMatrix> m, OperatorKind kind, int mode)
      : matrix_(std::move(m)), kind_(kind), mode_(mode) {}

  std::shared_ptr<const SparseMatrix> matrix_;
  OperatorKind kind_;
  int mode_;
};

/// Kronecker embedding of the local lowering matrix (sqrt(n) on the first
/// superdiagonal), its adjoint, or their product. mode is 1, 2 or 3.
ModeOperator build_mode_operator(FockCutoff cutoff, OperatorKind kind, int mode);

/// Polynomial in mode operators: a sum of coefficient * (product of factors).
/// Products are applied right to left.
class OperatorExpr {
 public:
  OperatorExpr() = default;
  OperatorExpr(const ModeOperator& op);  // NOLINT(google-explicit-constructor)
  explicit OperatorExpr(std::shared_ptr<const SparseMatrix> m);

  std::size_t dim() const noexcept { return dim_; }
  std::vector<Complex> apply(std::span<const Complex> x) const;
  /// Materialize as a single sparse matrix.
  SparseMatrix to_sparse() const;
  OperatorExpr adjoint() const;

  friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator*(Complex s, const OperatorExpr& a);

 private:
  struct Term {
    Complex coeff;
    std::vector<std::shared_ptr<const SparseMatrix>> factors;  // leftmost first
  };
  std::size_t dim_ = 0;
  std::vector<Term> terms_;
};

/// <psi|O|psi>. Throws InvalidArgument on dimension mismatch.
Complex expectation(const FockState& state, const OperatorExpr& op);

/// Q_i = (a_i + a_i^dagger)/sqrt 2 and P_i = (a_i - a_i^dagger)/(i sqrt 2).
OperatorExpr position_quadrature(FockCutoff cutoff, int mode);
OperatorExpr momentum_quadrature(FockCutoff cutoff, int mode);

}  // namespace sq3
