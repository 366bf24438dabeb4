#include <cmath>
#include <numbers>

#include "boltzlab/grid.hpp"
#include "boltzlab/rng.hpp"
#include "doctest.h"

using namespace boltzlab;

namespace {

VField random_field(const VGrid& g, Rng& rng) {
  VField f(g, Space::physical);
  for (auto& v : f.values) v = rng.gaussian();
  return f;
}

}  // namespace

TEST_CASE("grid construction and preconditions") {
  VGrid g(8, 6.0);
  CHECK(g.spacing() == doctest::Approx(1.5));
  CHECK(g.size() == 512);
  VGrid g16(16, 6.0);
  CHECK(g16.spacing() == doctest::Approx(0.75));
  CHECK_THROWS(VGrid(7, 6.0));   // odd
  CHECK_THROWS(VGrid(6, 6.0));   // below minimum
  CHECK_THROWS(VGrid(8, -1.0));  // bad width
  // frequency lattice is pi/L times integers, symmetric up to Nyquist
  CHECK(g.xi1(1) == doctest::Approx(std::numbers::pi / 6.0));
  CHECK(g.xi1(g.n() - 1) == doctest::Approx(-std::numbers::pi / 6.0));
}

TEST_CASE("maxwellian values and moments") {
  VGrid g(32, 8.0);
  VField mu = maxwellian(g);
  // value at v = 0 is (2 pi)^{-3/2}
  int i0 = g.n() / 2;  // v1(n/2) = 0
  CHECK(g.v1(i0) == doctest::Approx(0.0));
  CHECK(mu.values[g.flat(i0, i0, i0)].real() ==
        doctest::Approx(0.06349363593424097).epsilon(1e-12));
  // Gaussian moment oracle: mass 1, momentum 0, energy 3
  Moments m = moments(mu);
  CHECK(std::abs(m.mass - 1.0) < 1e-10);
  for (int a = 0; a < 3; ++a) CHECK(std::abs(m.momentum[a]) < 1e-12);
  CHECK(std::abs(m.energy - 3.0) < 1e-8);
  // even symmetry: mu(v) = mu(-v) exactly at mirrored nodes
  const int n = g.n();
  for (int i = 1; i < n; i += 5)
    for (int j = 1; j < n; j += 7) {
      CHECK(mu.values[g.flat(i, j, 3)].real() ==
            mu.values[g.flat(n - i, (n - j) % n, n - 3)].real());
    }
  // positivity everywhere
  for (const auto& v : mu.values) CHECK(v.real() > 0.0);
}

TEST_CASE("transform round trip and parseval") {
  VGrid g(8, 6.0);
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    VField f = random_field(g, rng);
    VField back = to_physical(to_fourier(f));
    double num = 0, den = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      num += std::norm(back.values[i] - f.values[i]);
      den += std::norm(f.values[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-12);
    // Parseval with the unitary convention
    CHECK(l2_norm(to_fourier(f)) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
  }
  CHECK_THROWS(to_physical(random_field(g, rng)));  // wrong space tag
}

TEST_CASE("constant field transforms to the zero mode only") {
  VGrid g(8, 6.0);
  VField f(g, Space::physical);
  for (auto& v : f.values) v = 1.0;
  VField hat = to_fourier(f);
  for (std::size_t i = 1; i < hat.size(); ++i) CHECK(std::abs(hat.values[i]) < 1e-12);
  CHECK(std::abs(hat.values[0]) > 1.0);
}

TEST_CASE("sampled maxwellian spectrum matches the analytic transform") {
  VGrid g(32, 8.0);
  VField hat = to_fourier(maxwellian(g));
  double worst = 0;
  for (std::size_t m = 0; m < hat.size(); ++m) {
    int i, j, k;
    g.coords(m, i, j, k);
    double r2 = g.xi1(i) * g.xi1(i) + g.xi1(j) * g.xi1(j) + g.xi1(k) * g.xi1(k);
    double analytic = std::exp(-r2 / 2.0) / paper_hat_scale();
    worst = std::max(worst, std::abs(hat.values[m].real() - analytic));
    worst = std::max(worst, std::abs(hat.values[m].imag()));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("weights") {
  VGrid g(8, 6.0);
  Rng rng(3);
  VField f = random_field(g, rng);
  // ell = 0 is the identity
  VField w0 = apply_weight(f, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(w0.values[i] == f.values[i]);
  // at |v|^2 = 3 and ell = 2 the factor is 4: node (i,j,k) with v=(1.5,...)? use
  // the closed form check instead on a known node v = (-1.5, 1.5, 1.5) hmm
  // pick the node with v = (1.5, 1.5, ... ) isn't exactly |v|^2 = 3; use
  // analytic check on every node
  VField w2 = apply_weight(f, 2.0);
  for (int tr = 0; tr < 10; ++tr) {
    int i = static_cast<int>(rng.next_u64() % 8), j = static_cast<int>(rng.next_u64() % 8),
        k = static_cast<int>(rng.next_u64() % 8);
    double r2 = g.v1(i) * g.v1(i) + g.v1(j) * g.v1(j) + g.v1(k) * g.v1(k);
    CHECK(std::abs(w2.values[g.flat(i, j, k)] - f.values[g.flat(i, j, k)] * (1 + r2)) <
          1e-12);
  }
  // inverse weights compose to the identity
  VField wm = apply_weight(apply_weight(f, -2.0), 2.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(std::abs(wm.values[i] - f.values[i]) < 1e-14 * (1.0 + std::abs(f.values[i])));
  CHECK_THROWS(apply_weight(to_fourier(f), 1.0));
}

TEST_CASE("sobolev norm") {
  VGrid g(16, 8.0);
  Rng rng(11);
  VField f = random_field(g, rng);
  // (s, ell) = (0, 0) equals the plain L2 norm exactly
  CHECK(sobolev_norm(f, 0.0, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-13));
  // monotone in s (multiplier >= 1)
  CHECK(sobolev_norm(f, 0.5, 0.0) >= sobolev_norm(f, 0.0, 0.0));
  CHECK(sobolev_norm(f, 1.0, 1.0) >= sobolev_norm(f, 0.25, 1.0));
  CHECK_THROWS(sobolev_norm(f, -0.5, 0.0));
  // direct 3D quadrature oracle for s=0, ell=2 on the maxwellian:
  // || <v>^2 mu ||_{L2}^2 = sum h^3 (1+|v|^2)^2 mu^2
  VField mu = maxwellian(g);
  double oracle = 0;
  for (std::size_t m = 0; m < mu.size(); ++m) {
    int i, j, k;
    g.coords(m, i, j, k);
    double r2 = g.v1(i) * g.v1(i) + g.v1(j) * g.v1(j) + g.v1(k) * g.v1(k);
    double val = (1 + r2) * mu.values[m].real();
    oracle += val * val;
  }
  oracle = std::sqrt(oracle * g.cell_volume());
  CHECK(sobolev_norm(mu, 0.0, 2.0) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("moments are linear and parity-aware") {
  VGrid g(8, 6.0);
  Rng rng(5);
  VField f = random_field(g, rng);
  Moments m1 = moments(f);
  VField f2 = f;
  for (auto& v : f2.values) v *= 3.0;
  Moments m2 = moments(f2);
  CHECK(m2.mass == doctest::Approx(3 * m1.mass));
  CHECK(m2.energy == doctest::Approx(3 * m1.energy));
  // an odd-in-v1 field has zero mass and zero momentum_2/3 by parity (the
  // damping keeps the unpaired v = -L plane below roundoff)
  VField odd(g, Space::physical);
  for (std::size_t mm = 0; mm < odd.size(); ++mm) {
    int i, j, k;
    g.coords(mm, i, j, k);
    odd.values[mm] = g.v1(i) * std::exp(-(g.v1(i) * g.v1(i) + g.v1(j) * g.v1(j) +
                                          g.v1(k) * g.v1(k)));
  }
  Moments mo = moments(odd);
  CHECK(std::abs(mo.mass) < 1e-12);
  CHECK(std::abs(mo.momentum[1]) < 1e-12);
  CHECK(std::abs(mo.momentum[2]) < 1e-12);
}
