// Scalar reference kernels. These define the expected results for the SIMD
// variants; keep them plain loops.

#include "sq3/kernels.hpp"

namespace sq3::kernels::scalar {

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(Complex alpha, std::span<Complex> x) {
  for (auto& v : x) v *= alpha;
}

double norm_sq(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& v : x) s += v.real() * v.real() + v.imag() * v.imag();
  return s;
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double scale_accumulate(double c, std::span<Complex> term, std::span<Complex> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < term.size(); ++i) {
    term[i] *= c;
    y[i] += term[i];
    s += term[i].real() * term[i].real() + term[i].imag() * term[i].imag();
  }
  return s;
}

void csr_matvec(const CsrView& a, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t row = 0; row < a.rows; ++row) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = a.row_ptr[row]; k < a.row_ptr[row + 1]; ++k) {
      const Complex v = a.values[k];
      const Complex xv = x[a.col_idx[k]];
      re += v.real() * xv.real() - v.imag() * xv.imag();
      im += v.real() * xv.imag() + v.imag() * xv.real();
    }
    y[row] = {re, im};
  }
}

void gaussian_exponent(const double* qform, const double* pform, const PhasePoints& pts, std::span<double> out) {
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double q[3] = {pts.q[0][k], pts.q[1][k], pts.q[2][k]};
    const double p[3] = {pts.p[0][k], pts.p[1][k], pts.p[2][k]};
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += q[i] * qform[3 * i + j] * q[j] + p[i] * pform[3 * i + j] * p[j];
    out[k] = s;
  }
}

}  // namespace sq3::kernels::scalar
