#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "boltzlab/simd/kernels.hpp"

// AVX2+FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a runtime cpuid check (see dispatch.cpp).

namespace boltzlab::simd {
namespace {

void axpy_avx2(double* y, const double* x, double a, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void lerp_avx2(double* dst, const double* a, const double* b, double c0,
               double c1, std::size_t n) {
  const __m256d c0v = _mm256_set1_pd(c0), c1v = _mm256_set1_pd(c1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_mul_pd(c1v, _mm256_loadu_pd(b + i));
    r = _mm256_fmadd_pd(c0v, _mm256_loadu_pd(a + i), r);
    _mm256_storeu_pd(dst + i, r);
  }
  for (; i < n; ++i) dst[i] = c0 * a[i] + c1 * b[i];
}

void prod_acc_avx2(double* acc, const double* a, const double* b, double w,
                   std::size_t n) {
  const __m256d wv = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    __m256d r = _mm256_fmadd_pd(wv, p, _mm256_loadu_pd(acc + i));
    _mm256_storeu_pd(acc + i, r);
  }
  for (; i < n; ++i) acc[i] += w * a[i] * b[i];
}

void prod3_acc_avx2(double* acc, const double* s, const double* a,
                    const double* b, double w, std::size_t n) {
  const __m256d wv = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    p = _mm256_mul_pd(p, _mm256_loadu_pd(s + i));
    __m256d r = _mm256_fmadd_pd(wv, p, _mm256_loadu_pd(acc + i));
    _mm256_storeu_pd(acc + i, r);
  }
  for (; i < n; ++i) acc[i] += w * s[i] * a[i] * b[i];
}


double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double tail = 0;
  for (; i < n; ++i) tail += a[i] * b[i];
  // lane k holds the scalar reference's accumulator s_k
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  return ((lanes[0] + tail) + lanes[1]) + (lanes[2] + lanes[3]);
}

double sum_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double tail = 0;
  for (; i < n; ++i) tail += a[i];
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  return ((lanes[0] + tail) + lanes[1]) + (lanes[2] + lanes[3]);
}

double wdiff2_avx2(const double* w, const double* a, const double* b,
                   std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    __m256d wd = _mm256_mul_pd(_mm256_loadu_pd(w + i), d);
    acc = _mm256_fmadd_pd(wd, d, acc);
  }
  double tail = 0;
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    tail += w[i] * d * d;
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  return ((lanes[0] + tail) + lanes[1]) + (lanes[2] + lanes[3]);
}

double diff2_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double tail = 0;
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    tail += d * d;
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  return ((lanes[0] + tail) + lanes[1]) + (lanes[2] + lanes[3]);
}

void cplx_axpy_avx2(std::complex<double>* y, const std::complex<double>* x,
                    std::complex<double> alpha, std::size_t n) {
  // two complex numbers per vector: y += alpha*x with (re,im) interleaved
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  const std::size_t nd = 2 * n;
  for (; i + 4 <= nd; i += 4) {
    __m256d xv = _mm256_loadu_pd(xd + i);
    __m256d xsw = _mm256_permute_pd(xv, 0x5);  // (im,re) pairs
    __m256d r = _mm256_mul_pd(ai, xsw);
    r = _mm256_addsub_pd(_mm256_mul_pd(ar, xv), r);  // (ar*re-ai*im, ar*im+ai*re)
    _mm256_storeu_pd(yd + i, _mm256_add_pd(_mm256_loadu_pd(yd + i), r));
  }
  for (; i < nd; i += 2) {
    double xr = xd[i], xi = xd[i + 1];
    yd[i] += alpha.real() * xr - alpha.imag() * xi;
    yd[i + 1] += alpha.real() * xi + alpha.imag() * xr;
  }
}

std::complex<double> dot_real_cplx_avx2(const double* x, const double* pre,
                                        const double* pim, std::size_t n) {
  __m256d accr = _mm256_setzero_pd(), acci = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    accr = _mm256_fmadd_pd(xv, _mm256_loadu_pd(pre + i), accr);
    acci = _mm256_fmadd_pd(xv, _mm256_loadu_pd(pim + i), acci);
  }
  double lr[4], li[4];
  _mm256_storeu_pd(lr, accr);
  _mm256_storeu_pd(li, acci);
  double tr = 0, ti = 0;
  for (; i < n; ++i) {
    tr += x[i] * pre[i];
    ti += x[i] * pim[i];
  }
  return {((lr[0] + lr[1]) + (lr[2] + lr[3])) + tr,
          ((li[0] + li[1]) + (li[2] + li[3])) + ti};
}

const KernelTable table = {
    axpy_avx2,   lerp_avx2,      prod_acc_avx2,
    prod3_acc_avx2, dot_avx2,    sum_avx2,
    wdiff2_avx2, diff2_avx2,     cplx_axpy_avx2,
    dot_real_cplx_avx2,
    "avx2",
};

}  // namespace

const KernelTable* avx2_table_impl() { return &table; }

}  // namespace boltzlab::simd

#endif  // x86-64
