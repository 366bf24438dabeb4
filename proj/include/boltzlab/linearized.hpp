#pragma once
// Linearized collision operator L = L1 + L2 around the normalized Maxwellian,
// the orthogonal projection P onto its null space
//   N = span{ sqrt(mu), v_i sqrt(mu), |v|^2 sqrt(mu) },
// and the Dirichlet-form evaluators (shared quadrature with collision.hpp).

#include <array>

#include "boltzlab/collision.hpp"
#include "boltzlab/grid.hpp"

namespace boltzlab {

struct MacroCoeffs {
  double a = 0;
  std::array<double, 3> b{0, 0, 0};
  double c = 0;
};

// Discretely orthonormalized null-space basis (Gram-Schmidt on grid samples,
// run twice). Basis order: sqrt(mu), v1 sqrt(mu), v2 sqrt(mu), v3 sqrt(mu),
// |v|^2 sqrt(mu).
class NullSpaceBasis {
 public:
  explicit NullSpaceBasis(const VGrid& g);

  const VGrid& grid() const { return *grid_; }
  // orthonormal basis element, 0..4
  const VField& q(int i) const { return ortho_[i]; }
  // raw (non-orthogonal) spanning element
  const VField& raw(int i) const { return raw_[i]; }

  // orthogonal projection and (a, b, c) from the 5x5 Gram system
  VField project(const VField& g, MacroCoeffs* coeffs = nullptr) const;
  // reconstruction (a + b.v + c|v|^2) sqrt(mu) sampled on the grid
  VField reconstruct(const MacroCoeffs& c) const;

 private:
  const VGrid* grid_;
  std::array<VField, 5> raw_, ortho_;
  std::array<std::array<double, 5>, 5> gram_inv_;
};

// P g with coefficients; thin wrapper building a basis per call (prefer
// holding a NullSpaceBasis when projecting many fields)
VField project_P(const VField& g, MacroCoeffs* coeffs = nullptr);

// L1 g = -Gamma(sqrt(mu), g), L2 g = -Gamma(g, sqrt(mu)), L = L1 + L2,
// through the no-division Gamma quadrature only.
VField apply_L1(const VField& g, const CollisionWorkspace& w);
VField apply_L2(const VField& g, const CollisionWorkspace& w);
VField apply_L(const VField& g, const CollisionWorkspace& w);

}  // namespace boltzlab
