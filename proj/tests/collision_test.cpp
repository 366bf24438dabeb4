#include <cmath>

#include "boltzlab/collision.hpp"
#include "boltzlab/rng.hpp"
#include "doctest.h"

using namespace boltzlab;

namespace {

KernelParams light_params() {
  KernelParams p;
  p.s = 0.25;
  p.K = 1.0;
  p.theta_min = 1e-3;
  p.n_theta = 22;
  p.n_phi = 8;
  return p;
}

VField damped_field(const VGrid& g, Rng& rng, double a = 1.0 / 6.0) {
  VField f(g, Space::physical);
  double c[4] = {rng.gaussian(), 0.3 * rng.gaussian(), 0.3 * rng.gaussian(),
                 0.3 * rng.gaussian()};
  for (std::size_t m = 0; m < f.size(); ++m) {
    int i, j, k;
    g.coords(m, i, j, k);
    double x = g.v1(i), y = g.v1(j), z = g.v1(k);
    double p = 1.0 + c[0] + c[1] * x + c[2] * y + c[3] * x * z;
    f.values[m] = p * std::exp(-a * (x * x + y * y + z * z));
  }
  double nn = l2_norm(f);
  for (auto& v : f.values) v /= nn;
  return f;
}

double rel_diff(const VField& a, const VField& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("bilinearity of the direct quadrature is exact") {
  VGrid g(8, 6.0);
  CollisionWorkspace ws(g, light_params(), EvalMode::trilinear);
  Rng rng(21);
  VField gf = damped_field(g, rng), ff = damped_field(g, rng);
  VField q1 = q_direct(gf, ff, ws);
  VField gs = gf;
  for (auto& v : gs.values) v *= 2.5;
  VField q2 = q_direct(gs, ff, ws);
  for (std::size_t i = 0; i < q1.size(); ++i)
    CHECK(std::abs(q2.values[i] - 2.5 * q1.values[i]) <=
          1e-12 * (1.0 + std::abs(q1.values[i])));
}

TEST_CASE("bobylev output is real with exact zero mass") {
  VGrid g(8, 6.0);
  CollisionWorkspace ws(g, light_params(), EvalMode::exact);
  Rng rng(31);
  VField gf = damped_field(g, rng), ff = damped_field(g, rng);
  VField q = q_bobylev(gf, ff, ws);
  for (const auto& v : q.values) CHECK(v.imag() == 0.0);
  Moments m = moments(q);
  CHECK(std::abs(m.mass) < 1e-13);
}

TEST_CASE("equilibrium annihilation improves with resolution") {
  // Q(mu, mu) = 0 in the continuum; the discrete residue must drop fast as the
  // grid refines at fixed box width
  KernelParams p = light_params();
  double residue[2];
  int idx = 0;
  for (int n : {8, 12}) {
    VGrid g(n, 8.0);
    CollisionWorkspace ws(g, p, EvalMode::exact);
    VField mu = maxwellian(g);
    VField q = q_bobylev(mu, mu, ws);
    residue[idx++] = l2_norm(q) / l2_norm(mu);
  }
  MESSAGE("Q(mu,mu)/|mu| at n=8: ", residue[0], "  n=12: ", residue[1]);
  CHECK(residue[1] < 0.3 * residue[0]);
}

TEST_CASE("bobylev and direct pipelines agree in exact mode") {
  VGrid g(8, 6.0);
  CollisionWorkspace ws(g, light_params(), EvalMode::exact);
  Rng rng(5);
  VField gf = damped_field(g, rng), ff = damped_field(g, rng);
  VField qb = q_bobylev(gf, ff, ws);
  VField qd = q_direct(gf, ff, ws);
  double d = rel_diff(qb, qd);
  MESSAGE("|qb - qd|/|qd| at n=8 L=6 exact: ", d);
  CHECK(d < 1.0);  // tightened by the oracle study at higher resolution
}

TEST_CASE("gamma annihilates the equilibrium pair") {
  VGrid g(8, 6.0);
  CollisionWorkspace ws(g, light_params(), EvalMode::exact);
  VField sm = sqrt_maxwellian(g);
  VField gam = gamma_bilinear(sm, sm, ws);
  double r = l2_norm(gam) / l2_norm(sm);
  MESSAGE("Gamma(sqrt mu, sqrt mu)/|sqrt mu| = ", r);
  CHECK(r < 0.5);  // resolution-limited at n=8, L=6; tracked by cmd_oracle
}

TEST_CASE("cancellation pairing approaches lambda_b mass") {
  VGrid g(8, 6.0);
  KernelParams p = light_params();
  CollisionWorkspace ws(g, p, EvalMode::exact);
  VField mu = maxwellian(g);
  double lam = cancellation_constant(p);
  double got = cancellation_apply(mu, ws, mu);
  Moments m = moments(mu);
  double ref = lam * m.mass * m.mass;  // probe mass times field mass
  MESSAGE("cancellation_apply(mu)/ref = ", got / ref);
  CHECK(std::abs(got / ref - 1.0) < 0.2);
  // zero field maps to zero exactly
  VField z(g, Space::physical);
  CHECK(cancellation_apply(z, ws, mu) == 0.0);
}

TEST_CASE("forms are nonnegative and quadratically homogeneous") {
  VGrid g(8, 6.0);
  CollisionWorkspace ws(g, light_params(), EvalMode::trilinear);
  Rng rng(17);
  VField gf = damped_field(g, rng);
  double d = dirichlet_form(gf, ws);
  double l1 = l1_form(gf, ws);
  CHECK(d >= 0.0);
  CHECK(l1 >= 0.0);
  CHECK(l1 >= 0.5 * d - 1e-10 * (1 + d));  // (A+B)^2 <= 2(A^2+B^2), exact here
  VField g2 = gf;
  for (auto& v : g2.values) v *= 3.0;
  CHECK(dirichlet_form(g2, ws) == doctest::Approx(9.0 * d).epsilon(1e-10));
  double ta, tb;
  triple_norm_direct_terms(gf, ws, ta, tb);
  CHECK(ta >= 0.0);
  CHECK(tb >= 0.0);
  // constant g makes the squared-difference form vanish
  VField cst(g, Space::physical);
  for (auto& v : cst.values) v = 1.0;
  CHECK(std::abs(squared_diff_form(gf, cst, ws)) < 1e-10);
}

TEST_CASE("cost guard rejects large grids unless overridden") {
  VGrid g(16, 8.0);
  CollisionWorkspace ws(g, light_params(), EvalMode::trilinear);
  Rng rng(3);
  VField gf = damped_field(g, rng), ff = damped_field(g, rng);
  CHECK_THROWS(q_direct(gf, ff, ws));
  CollisionWorkspace ws2(g, light_params(), EvalMode::trilinear);
  ws2.allow_large_direct = true;
  CHECK_NOTHROW(q_direct(gf, ff, ws2));
}
