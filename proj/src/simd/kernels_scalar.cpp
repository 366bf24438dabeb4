#include "boltzlab/simd/kernels.hpp"

// Scalar reference kernels. Reductions use four accumulators combined in a
// fixed order so that the AVX2 variants can follow the same summation tree.

namespace boltzlab::simd {
namespace {

void axpy_scalar(double* y, const double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void lerp_scalar(double* dst, const double* a, const double* b, double c0,
                 double c1, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = c0 * a[i] + c1 * b[i];
}

void prod_acc_scalar(double* acc, const double* a, const double* b, double w,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += w * a[i] * b[i];
}

void prod3_acc_scalar(double* acc, const double* s, const double* a,
                      const double* b, double w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += w * s[i] * a[i] * b[i];
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

double sum_scalar(const double* a, std::size_t n) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i];
    s1 += a[i + 1];
    s2 += a[i + 2];
    s3 += a[i + 3];
  }
  for (; i < n; ++i) s0 += a[i];
  return (s0 + s1) + (s2 + s3);
}

double wdiff2_scalar(const double* w, const double* a, const double* b,
                     std::size_t n) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    double d0 = a[i] - b[i];
    double d1 = a[i + 1] - b[i + 1];
    double d2 = a[i + 2] - b[i + 2];
    double d3 = a[i + 3] - b[i + 3];
    s0 += w[i] * d0 * d0;
    s1 += w[i + 1] * d1 * d1;
    s2 += w[i + 2] * d2 * d2;
    s3 += w[i + 3] * d3 * d3;
  }
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    s0 += w[i] * d * d;
  }
  return (s0 + s1) + (s2 + s3);
}

double diff2_scalar(const double* a, const double* b, std::size_t n) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    double d0 = a[i] - b[i];
    double d1 = a[i + 1] - b[i + 1];
    double d2 = a[i + 2] - b[i + 2];
    double d3 = a[i + 3] - b[i + 3];
    s0 += d0 * d0;
    s1 += d1 * d1;
    s2 += d2 * d2;
    s3 += d3 * d3;
  }
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    s0 += d * d;
  }
  return (s0 + s1) + (s2 + s3);
}

void cplx_axpy_scalar(std::complex<double>* y, const std::complex<double>* x,
                      std::complex<double> alpha, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    double xr = xd[2 * i], xi = xd[2 * i + 1];
    yd[2 * i] += ar * xr - ai * xi;
    yd[2 * i + 1] += ar * xi + ai * xr;
  }
}

std::complex<double> dot_real_cplx_scalar(const double* x, const double* pre,
                                          const double* pim, std::size_t n) {
  double r0 = 0, r1 = 0, i0 = 0, i1 = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    r0 += x[i] * pre[i];
    r1 += x[i + 1] * pre[i + 1];
    i0 += x[i] * pim[i];
    i1 += x[i + 1] * pim[i + 1];
  }
  for (; i < n; ++i) {
    r0 += x[i] * pre[i];
    i0 += x[i] * pim[i];
  }
  return {r0 + r1, i0 + i1};
}

const KernelTable table = {
    axpy_scalar,   lerp_scalar,      prod_acc_scalar,
    prod3_acc_scalar, dot_scalar,    sum_scalar,
    wdiff2_scalar, diff2_scalar,     cplx_axpy_scalar,
    dot_real_cplx_scalar,
    "scalar",
};

}  // namespace

const KernelTable& scalar_kernels() { return table; }

}  // namespace boltzlab::simd
