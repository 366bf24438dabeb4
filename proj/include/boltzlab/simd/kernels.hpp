#pragma once
// Data-parallel inner-loop kernels. Every kernel has a scalar reference
// implementation and (on x86-64 with AVX2+FMA) a vectorized variant selected
// at runtime. The two variants are equivalence-tested in
// tests/simd_kernels_test.cpp.
//
// Reduction kernels accumulate into four independent lanes and combine them
// in a fixed order, so results do not depend on the thread count.

#include <complex>
#include <cstddef>

namespace boltzlab::simd {

struct KernelTable {
  // y[i] += a * x[i]
  void (*axpy)(double* y, const double* x, double a, std::size_t n);
  // dst[i] = c0 * a[i] + c1 * b[i]
  void (*lerp)(double* dst, const double* a, const double* b, double c0,
               double c1, std::size_t n);
  // acc[i] += w * a[i] * b[i]
  void (*prod_acc)(double* acc, const double* a, const double* b, double w,
                   std::size_t n);
  // acc[i] += w * s[i] * a[i] * b[i]
  void (*prod3_acc)(double* acc, const double* s, const double* a,
                    const double* b, double w, std::size_t n);
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i a[i]
  double (*sum)(const double* a, std::size_t n);
  // sum_i w[i] * (a[i] - b[i])^2
  double (*wdiff2)(const double* w, const double* a, const double* b,
                   std::size_t n);
  // sum_i (a[i] - b[i])^2
  double (*diff2)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i] over interleaved complex (re,im) pairs
  void (*cplx_axpy)(std::complex<double>* y, const std::complex<double>* x,
                    std::complex<double> alpha, std::size_t n);
  // sum_i x[i] * (pre[i] + i*pim[i]) for real x
  std::complex<double> (*dot_real_cplx)(const double* x, const double* pre,
                                        const double* pim, std::size_t n);
  const char* name;
};

// Active table, chosen once at startup (BOLTZLAB_SIMD=scalar|avx2 overrides).
const KernelTable& kernels();

// Individual tables, for equivalence tests.
const KernelTable& scalar_kernels();
const KernelTable* avx2_kernels();  // nullptr if unsupported by CPU or build

}  // namespace boltzlab::simd
