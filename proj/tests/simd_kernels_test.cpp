#include <cmath>
#include <vector>

#include "boltzlab/rng.hpp"
#include "boltzlab/simd/kernels.hpp"
#include "doctest.h"

using namespace boltzlab;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.gaussian();
  return v;
}

double rel(double a, double b) {
  double d = std::abs(a - b);
  double s = std::max(std::abs(a), std::abs(b));
  return s > 0 ? d / s : d;
}

}  // namespace

TEST_CASE("scalar kernel basics") {
  const auto& K = simd::scalar_kernels();
  std::vector<double> a{1, 2, 3, 4, 5}, b{2, 0, -1, 1, 3};
  CHECK(K.dot(a.data(), b.data(), 5) == doctest::Approx(2 + 0 - 3 + 4 + 15));
  CHECK(K.sum(a.data(), 5) == doctest::Approx(15));
  CHECK(K.diff2(a.data(), b.data(), 5) ==
        doctest::Approx(1 + 4 + 16 + 9 + 4));
  std::vector<double> y{0, 0, 0, 0, 0};
  K.axpy(y.data(), a.data(), 2.0, 5);
  CHECK(y[4] == doctest::Approx(10.0));
}

TEST_CASE("avx2 kernels match scalar reference") {
  const simd::KernelTable* avx = simd::avx2_kernels();
  if (!avx) {
    MESSAGE("AVX2 not available; skipping equivalence checks");
    return;
  }
  const auto& ref = simd::scalar_kernels();
  Rng rng(12345);
  for (std::size_t n : {1, 3, 4, 7, 16, 255, 4096}) {
    auto a = random_vec(rng, n), b = random_vec(rng, n), w = random_vec(rng, n);
    for (auto& x : w) x = std::abs(x);

    CHECK(rel(avx->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n)) < 1e-13);
    CHECK(rel(avx->sum(a.data(), b.size() ? n : n), ref.sum(a.data(), n)) < 1e-13);
    CHECK(rel(avx->diff2(a.data(), b.data(), n), ref.diff2(a.data(), b.data(), n)) < 1e-13);
    CHECK(rel(avx->wdiff2(w.data(), a.data(), b.data(), n),
              ref.wdiff2(w.data(), a.data(), b.data(), n)) < 1e-13);

    // pointwise kernels: compare on the vector scale (fma contraction makes
    // last-ulp differences relative to the element meaningless near zeros)
    double scale = 0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i]) + std::abs(b[i]));
    auto y1 = random_vec(rng, n);
    auto y2 = y1;
    avx->axpy(y1.data(), a.data(), 1.7, n);
    ref.axpy(y2.data(), a.data(), 1.7, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-13 * scale);

    auto d1 = std::vector<double>(n), d2 = std::vector<double>(n);
    avx->lerp(d1.data(), a.data(), b.data(), 0.3, 0.7, n);
    ref.lerp(d2.data(), a.data(), b.data(), 0.3, 0.7, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(d1[i] - d2[i]) < 1e-13 * scale);

    auto acc1 = random_vec(rng, n);
    auto acc2 = acc1;
    avx->prod_acc(acc1.data(), a.data(), b.data(), 0.9, n);
    ref.prod_acc(acc2.data(), a.data(), b.data(), 0.9, n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(acc1[i] - acc2[i]) < 1e-13 * scale * scale);

    acc1 = random_vec(rng, n);
    acc2 = acc1;
    avx->prod3_acc(acc1.data(), w.data(), a.data(), b.data(), 0.6, n);
    ref.prod3_acc(acc2.data(), w.data(), a.data(), b.data(), 0.6, n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(acc1[i] - acc2[i]) < 1e-12 * (1 + scale * scale * scale));

    std::vector<std::complex<double>> x(n), z1(n), z2(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = {rng.gaussian(), rng.gaussian()};
      z1[i] = {rng.gaussian(), rng.gaussian()};
      z2[i] = z1[i];
    }
    std::complex<double> alpha{0.4, -1.1};
    avx->cplx_axpy(z1.data(), x.data(), alpha, n);
    ref.cplx_axpy(z2.data(), x.data(), alpha, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(z1[i] - z2[i]) < 1e-13);

    auto c1 = avx->dot_real_cplx(a.data(), b.data(), w.data(), n);
    auto c2 = ref.dot_real_cplx(a.data(), b.data(), w.data(), n);
    CHECK(std::abs(c1 - c2) < 1e-12 * (1.0 + std::abs(c2)));
  }
}

TEST_CASE("reduction result independent of kernel path for aligned sizes") {
  // multiples of 4: the fixed four-lane tree makes scalar and AVX2 agree
  // bit-for-bit except for fma contraction inside dot; check to tight rel
  const simd::KernelTable* avx = simd::avx2_kernels();
  if (!avx) return;
  const auto& ref = simd::scalar_kernels();
  Rng rng(99);
  auto a = random_vec(rng, 1024);
  CHECK(rel(avx->sum(a.data(), 1024), ref.sum(a.data(), 1024)) < 1e-15);
}
