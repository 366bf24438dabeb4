#pragma once
// The bilinear collision operator Q in sigma-representation: spectral
// (Bobylev) evaluation per Fourier mode, a direct-quadrature oracle in
// velocity space, the bilinear operator Gamma (with the sqrt(mu_*) weight and
// no division by mu), and the Maxwellian-molecule cancellation pairing.
//
// Direct quadrature layout: for every minimum-image lattice offset u = v_*-v
// and sphere node sigma (polar axis along v - v_* = -u),
//     v'   = v + (u + |u| sigma)/2,   v'_* = v + (u - |u| sigma)/2,
// so the whole (v, v_*) pair loop becomes, per (u, sigma), three streaming
// passes over the grid: two shifted-field builds and one product-accumulate.
// The u = 0 diagonal contributes zero identically and is skipped.
//
// Off-lattice values: interpolation_mode trilinear or exact spectral shifts
// (phase multiplication) on the velocity side; trilinear / windowed / exact
// on the frequency side (see offlattice.hpp). Loss terms are separable over
// the u lattice and are accumulated in closed form.

#include <array>
#include <vector>

#include "boltzlab/angular.hpp"
#include "boltzlab/grid.hpp"
#include "boltzlab/offlattice.hpp"

namespace boltzlab {

struct CollisionWorkspace {
  const VGrid* grid = nullptr;
  KernelParams params;
  EvalMode interpolation_mode = EvalMode::windowed;
  int window_width = 8;
  // cost guard for the direct-quadrature operators (override deliberately)
  int direct_n_limit = 12;
  bool allow_large_direct = false;

  ThetaRule rule;  // cached polar rule

  CollisionWorkspace(const VGrid& g, const KernelParams& p,
                     EvalMode mode = EvalMode::windowed);

  void check_direct_size() const;
};

// Q(g, f) per Fourier mode:
//   Qhat(xi) = int_{S2} b(xihat.sigma) [ ghat(xi-) fhat(xi+) - ghat(0) fhat(xi) ] dsigma
// with xi+- = (xi +- |xi| sigma)/2; ghat(0) is the exact zero mode. Output is
// a physical-space real field; the imaginary residue is checked against
// 1e-10 of the output norm and discarded.
VField q_bobylev(const VField& g, const VField& f, const CollisionWorkspace& w);

// Direct sigma-representation quadrature of Q(g, f).
VField q_direct(const VField& g, const VField& f, const CollisionWorkspace& w);

// Gamma(f, g) = int int b sqrt(mu_*) (f'_* g' - f_* g) dv_* dsigma
VField gamma_bilinear(const VField& f, const VField& g, const CollisionWorkspace& w);

// probe-weighted cancellation pairing:
//   int probe(v) [ int int b (f'_* - f_*) dsigma dv_* ] dv
// expected to equal cancellation_constant * mass(f) for unit-mass probes.
double cancellation_apply(const VField& f, const CollisionWorkspace& w,
                          const VField& probe);

// ---- quadratic forms sharing the same quadrature --------------------------

// (L g, g) by the symmetrized quadruple-square formula
double dirichlet_form(const VField& g, const CollisionWorkspace& w);
// (L1 g, g) = 1/2 intintint b (sqrt(mu'_*) g' - sqrt(mu_*) g)^2
double l1_form(const VField& g, const CollisionWorkspace& w);
// intintint b mu_* (g' - g)^2   and   intintint b g_*^2 (sqrt(mu') - sqrt(mu))^2
// (the two halves of the non-isotropic norm, direct evaluation)
void triple_norm_direct_terms(const VField& g, const CollisionWorkspace& w,
                              double& term_a, double& term_b);
// intintint b f_*^2 (g' - g)^2
double squared_diff_form(const VField& f, const VField& g, const CollisionWorkspace& w);

}  // namespace boltzlab
