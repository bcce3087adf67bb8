#include "sq3/operators.hpp"

#include <cmath>

#include "sq3/errors.hpp"
#include "sq3/kernels.hpp"

namespace sq3 {

ModeOperator build_mode_operator(FockCutoff cutoff, OperatorKind kind, int mode) {
  if (mode < 1 || mode > 3) throw InvalidArgument("build_mode_operator: mode must be 1, 2 or 3");
  const std::size_t d = cutoff.local_dim();
  const std::size_t stride = mode == 1 ? d * d : (mode == 2 ? d : 1);
  std::vector<Triplet> t;
  t.reserve(cutoff.dim());
  for (std::size_t i = 0; i < cutoff.dim(); ++i) {
    const auto n = static_cast<std::size_t>(cutoff.multi_index(i)[mode - 1]);
    switch (kind) {
      case OperatorKind::annihilation:
        if (n > 0) t.push_back({i - stride, i, std::sqrt(static_cast<double>(n))});
        break;
      case OperatorKind::creation:
        if (n + 1 < d) t.push_back({i + stride, i, std::sqrt(static_cast<double>(n + 1))});
        break;
      case OperatorKind::number:
        if (n > 0) t.push_back({i, i, static_cast<double>(n)});
        break;
    }
  }
  auto m = std::make_shared<const SparseMatrix>(SparseMatrix::from_triplets(cutoff.dim(), cutoff.dim(), std::move(t)));
  return ModeOperator(std::move(m), kind, mode);
}

OperatorExpr::OperatorExpr(const ModeOperator& op) : OperatorExpr(op.shared_matrix()) {}

OperatorExpr::OperatorExpr(std::shared_ptr<const SparseMatrix> m) {
  if (m->rows() != m->cols()) throw InvalidArgument("OperatorExpr: operator must be square");
  dim_ = m->rows();
  terms_.push_back({1.0, {std::move(m)}});
}

std::vector<Complex> OperatorExpr::apply(std::span<const Complex> x) const {
  if (x.size() != dim_) throw InvalidArgument("OperatorExpr::apply: dimension mismatch");
  std::vector<Complex> out(dim_, 0.0);
  std::vector<Complex> work;
  std::vector<Complex> next(dim_);
  for (const auto& term : terms_) {
    work.assign(x.begin(), x.end());
    for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
      (*it)->apply(work, next);
      std::swap(work, next);
    }
    kernels::axpy(term.coeff, work, out);
  }
  return out;
}

SparseMatrix OperatorExpr::to_sparse() const {
  SparseMatrix total(dim_, dim_);
  for (const auto& term : terms_) {
    SparseMatrix prod = SparseMatrix::identity(dim_);
    for (const auto& f : term.factors) prod = prod * *f;
    total = total + term.coeff * prod;
  }
  return total;
}

OperatorExpr OperatorExpr::adjoint() const {
  OperatorExpr out;
  out.dim_ = dim_;
  for (const auto& term : terms_) {
    Term t{std::conj(term.coeff), {}};
    for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it)
      t.factors.push_back(std::make_shared<const SparseMatrix>((*it)->adjoint()));
    out.terms_.push_back(std::move(t));
  }
  return out;
}

namespace {
std::size_t common_dim(const OperatorExpr& a, const OperatorExpr& b) {
  if (a.dim() == 0) return b.dim();
  if (b.dim() == 0 || a.dim() == b.dim()) return a.dim();
  throw InvalidArgument("OperatorExpr: dimension mismatch");
}
}  // namespace

OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
  OperatorExpr out = a;
  out.dim_ = common_dim(a, b);
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  return out;
}

OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) { return a + Complex{-1.0} * b; }

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  OperatorExpr out;
  out.dim_ = common_dim(a, b);
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      OperatorExpr::Term t{ta.coeff * tb.coeff, ta.factors};
      t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
      out.terms_.push_back(std::move(t));
    }
  return out;
}

OperatorExpr operator*(Complex s, const OperatorExpr& a) {
  OperatorExpr out = a;
  for (auto& t : out.terms_) t.coeff *= s;
  return out;
}

Complex expectation(const FockState& state, const OperatorExpr& op) {
  if (op.dim() != state.cutoff().dim()) throw InvalidArgument("expectation: dimension mismatch");
  const auto applied = op.apply(state.amplitudes());
  return kernels::dot(state.amplitudes(), applied);
}

OperatorExpr position_quadrature(FockCutoff cutoff, int mode) {
  const double s = 1.0 / std::sqrt(2.0);
  return s * (OperatorExpr(build_mode_operator(cutoff, OperatorKind::annihilation, mode)) +
              OperatorExpr(build_mode_operator(cutoff, OperatorKind::creation, mode)));
}

OperatorExpr momentum_quadrature(FockCutoff cutoff, int mode) {
  const Complex s = Complex{0.0, -1.0} / std::sqrt(2.0);
  return s * (OperatorExpr(build_mode_operator(cutoff, OperatorKind::annihilation, mode)) -
              OperatorExpr(build_mode_operator(cutoff, OperatorKind::creation, mode)));
}

}  // namespace sq3
