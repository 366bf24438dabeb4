#pragma once
// The non-isotropic norm |||g||| tied to the singular cross-section, in two
// independent evaluations:
//   - Fourier route (Plancherel/Bobylev representation of both terms, with
//     analytic Gaussian transforms for the Maxwellian factors),
//   - direct quadrature route (triple integrals, shared with collision.hpp).
// Plus the phase-space norm ||| . |||_{B^m_ell} over (x, v).

#include "boltzlab/collision.hpp"
#include "boltzlab/grid.hpp"

namespace boltzlab {

struct NormBreakdown {
  double term_a = 0;  // relative-difference part
  double term_b = 0;  // weight part
  double total() const { return term_a + term_b; }
};

// |||g|||^2 via the Fourier representation; off-lattice spectral values of g
// and g^2 per workspace mode, Maxwellian transforms analytic.
NormBreakdown triple_norm(const VField& g, const CollisionWorkspace& w);

// |||g|||^2 by direct quadrature (cost-guarded small grids).
NormBreakdown triple_norm_direct(const VField& g, const CollisionWorkspace& w);

}  // namespace boltzlab
