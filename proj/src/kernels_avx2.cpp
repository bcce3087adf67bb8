// AVX2/FMA variants of the kernels in kernels_scalar.cpp.
// This file is compiled with -mavx2 -mfma and only reached through the
// dispatch table after a CPUID check.

#include <immintrin.h>

#include "sq3/kernels.hpp"

namespace sq3::kernels::avx2 {
namespace {

// Two complex numbers per register: [re0, im0, re1, im1].
inline const double* raw(std::span<const Complex> v) { return reinterpret_cast<const double*>(v.data()); }
inline double* raw(std::span<Complex> v) { return reinterpret_cast<double*>(v.data()); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (ar + i ai) * x for two packed complex numbers.
inline __m256d cmul(__m256d ar, __m256d ai, __m256d x) {
  const __m256d swapped = _mm256_permute_pd(x, 0x5);
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, swapped));
}

}  // namespace

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  const std::size_t n = x.size();
  const std::size_t vec_end = n & ~std::size_t{1};
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const double* xp = raw(x);
  double* yp = raw(y);
  for (std::size_t i = 0; i < vec_end; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, cmul(ar, ai, xv)));
  }
  for (std::size_t i = vec_end; i < n; ++i) y[i] += alpha * x[i];
}

void scale(Complex alpha, std::span<Complex> x) {
  const std::size_t n = x.size();
  const std::size_t vec_end = n & ~std::size_t{1};
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  double* xp = raw(x);
  for (std::size_t i = 0; i < vec_end; i += 2) {
    _mm256_storeu_pd(xp + 2 * i, cmul(ar, ai, _mm256_loadu_pd(xp + 2 * i)));
  }
  for (std::size_t i = vec_end; i < n; ++i) x[i] *= alpha;
}

double norm_sq(std::span<const Complex> x) {
  const std::size_t n = x.size();
  const std::size_t vec_end = n & ~std::size_t{3};
  const double* xp = raw(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  for (std::size_t i = 0; i < vec_end; i += 4) {
    const __m256d a = _mm256_loadu_pd(xp + 2 * i);
    const __m256d b = _mm256_loadu_pd(xp + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (std::size_t i = vec_end; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  const std::size_t n = x.size();
  const std::size_t vec_end = n & ~std::size_t{1};
  const double* xp = raw(x);
  const double* yp = raw(y);
  __m256d acc_re = _mm256_setzero_pd();  // [xr*yr, xi*yi, ...]
  __m256d acc_im = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  for (std::size_t i = 0; i < vec_end; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), acc_im);
  }
  alignas(32) double re_lanes[4];
  alignas(32) double im_lanes[4];
  _mm256_store_pd(re_lanes, acc_re);
  _mm256_store_pd(im_lanes, acc_im);
  double re = (re_lanes[0] + re_lanes[2]) + (re_lanes[1] + re_lanes[3]);
  double im = (im_lanes[0] + im_lanes[2]) - (im_lanes[1] + im_lanes[3]);
  for (std::size_t i = vec_end; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double scale_accumulate(double c, std::span<Complex> term, std::span<Complex> y) {
  const std::size_t n = term.size();
  const std::size_t vec_end = n & ~std::size_t{1};
  const __m256d cv = _mm256_set1_pd(c);
  double* tp = raw(term);
  double* yp = raw(y);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < vec_end; i += 2) {
    const __m256d t = _mm256_mul_pd(cv, _mm256_loadu_pd(tp + 2 * i));
    _mm256_storeu_pd(tp + 2 * i, t);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), t));
    acc = _mm256_fmadd_pd(t, t, acc);
  }
  double s = hsum(acc);
  for (std::size_t i = vec_end; i < n; ++i) {
    term[i] *= c;
    y[i] += term[i];
    s += term[i].real() * term[i].real() + term[i].imag() * term[i].imag();
  }
  return s;
}

void csr_matvec(const CsrView& a, std::span<const Complex> x, std::span<Complex> y) {
  const double* vp = reinterpret_cast<const double*>(a.values.data());
  const double* xp = raw(x);
  double* yp = raw(y);
  for (std::size_t row = 0; row < a.rows; ++row) {
    std::size_t k = a.row_ptr[row];
    const std::size_t end = a.row_ptr[row + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 1 < end; k += 2) {
      const __m256d v = _mm256_loadu_pd(vp + 2 * k);
      const __m128d x0 = _mm_loadu_pd(xp + 2 * a.col_idx[k]);
      const __m128d x1 = _mm_loadu_pd(xp + 2 * a.col_idx[k + 1]);
      const __m256d xv = _mm256_insertf128_pd(_mm256_castpd128_pd256(x0), x1, 1);
      acc = _mm256_add_pd(acc, cmul(_mm256_movedup_pd(v), _mm256_permute_pd(v, 0xF), xv));
    }
    __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    if (k < end) {
      const __m128d v = _mm_loadu_pd(vp + 2 * k);
      const __m128d xv = _mm_loadu_pd(xp + 2 * a.col_idx[k]);
      const __m128d vr = _mm_movedup_pd(v);
      const __m128d vi = _mm_permute_pd(v, 0x3);
      sum = _mm_add_pd(sum, _mm_fmaddsub_pd(vr, xv, _mm_mul_pd(vi, _mm_permute_pd(xv, 0x1))));
    }
    _mm_storeu_pd(yp + 2 * row, sum);
  }
}

void gaussian_exponent(const double* qform, const double* pform, const PhasePoints& pts, std::span<double> out) {
  const std::size_t n = pts.size();
  const std::size_t vec_end = n & ~std::size_t{3};
  for (std::size_t k = 0; k < vec_end; k += 4) {
    __m256d q[3];
    __m256d p[3];
    for (int i = 0; i < 3; ++i) {
      q[i] = _mm256_loadu_pd(pts.q[i].data() + k);
      p[i] = _mm256_loadu_pd(pts.p[i].data() + k);
    }
    __m256d s = _mm256_setzero_pd();
    for (int i = 0; i < 3; ++i) {
      __m256d tq = _mm256_setzero_pd();
      __m256d tp = _mm256_setzero_pd();
      for (int j = 0; j < 3; ++j) {
        tq = _mm256_fmadd_pd(_mm256_set1_pd(qform[3 * i + j]), q[j], tq);
        tp = _mm256_fmadd_pd(_mm256_set1_pd(pform[3 * i + j]), p[j], tp);
      }
      s = _mm256_fmadd_pd(q[i], tq, s);
      s = _mm256_fmadd_pd(p[i], tp, s);
    }
    _mm256_storeu_pd(out.data() + k, s);
  }
  if (vec_end < n) {
    PhasePoints tail;
    for (int i = 0; i < 3; ++i) {
      tail.q[i] = pts.q[i].subspan(vec_end);
      tail.p[i] = pts.p[i].subspan(vec_end);
    }
    scalar::gaussian_exponent(qform, pform, tail, out.subspan(vec_end));
  }
}

}  // namespace sq3::kernels::avx2
