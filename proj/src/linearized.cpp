#include "boltzlab/linearized.hpp"

#include <cmath>
#include <stdexcept>

namespace boltzlab {

namespace {

// dense 5x5 solve by Gauss elimination with partial pivoting
std::array<std::array<double, 5>, 5> invert5(std::array<std::array<double, 5>, 5> m) {
  std::array<std::array<double, 5>, 5> inv{};
  for (int i = 0; i < 5; ++i) inv[i][i] = 1.0;
  for (int col = 0; col < 5; ++col) {
    int piv = col;
    for (int r = col + 1; r < 5; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-14)
      throw std::runtime_error("null-space Gram matrix is singular (degenerate grid)");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    double d = m[col][col];
    for (int c = 0; c < 5; ++c) {
      m[col][c] /= d;
      inv[col][c] /= d;
    }
    for (int r = 0; r < 5; ++r) {
      if (r == col) continue;
      double f = m[r][col];
      for (int c = 0; c < 5; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace

NullSpaceBasis::NullSpaceBasis(const VGrid& g) : grid_(&g) {
  VField sm = sqrt_maxwellian(g);
  const int n = g.n();
  for (int m = 0; m < 5; ++m) raw_[m] = VField(g, Space::physical);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::size_t f = g.flat(i, j, k);
        double x = g.v1(i), y = g.v1(j), z = g.v1(k);
        double s = sm.values[f].real();
        raw_[0].values[f] = s;
        raw_[1].values[f] = x * s;
        raw_[2].values[f] = y * s;
        raw_[3].values[f] = z * s;
        raw_[4].values[f] = (x * x + y * y + z * z) * s;
      }
  // modified Gram-Schmidt, two rounds
  for (int m = 0; m < 5; ++m) {
    ortho_[m] = raw_[m];
    for (int round = 0; round < 2; ++round)
      for (int p = 0; p < m; ++p) {
        double c = inner_product(ortho_[m], ortho_[p]);
        for (std::size_t f = 0; f < ortho_[m].size(); ++f)
          ortho_[m].values[f] -= c * ortho_[p].values[f];
      }
    double nn = l2_norm(ortho_[m]);
    if (nn < 1e-300) throw std::runtime_error("null-space basis degenerate");
    for (auto& v : ortho_[m].values) v /= nn;
  }
  // Gram matrix of the raw basis (for coefficient recovery)
  std::array<std::array<double, 5>, 5> gram{};
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) gram[a][b] = inner_product(raw_[a], raw_[b]);
  gram_inv_ = invert5(gram);
}

VField NullSpaceBasis::project(const VField& g, MacroCoeffs* coeffs) const {
  VField out(*grid_, Space::physical);
  for (int m = 0; m < 5; ++m) {
    double c = inner_product(g, ortho_[m]);
    for (std::size_t f = 0; f < out.size(); ++f)
      out.values[f] += c * ortho_[m].values[f];
  }
  if (coeffs) {
    double rhs[5];
    for (int m = 0; m < 5; ++m) rhs[m] = inner_product(g, raw_[m]);
    double sol[5] = {0, 0, 0, 0, 0};
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) sol[a] += gram_inv_[a][b] * rhs[b];
    coeffs->a = sol[0];
    coeffs->b = {sol[1], sol[2], sol[3]};
    coeffs->c = sol[4];
  }
  return out;
}

VField NullSpaceBasis::reconstruct(const MacroCoeffs& c) const {
  VField out(*grid_, Space::physical);
  for (std::size_t f = 0; f < out.size(); ++f)
    out.values[f] = c.a * raw_[0].values[f] + c.b[0] * raw_[1].values[f] +
                    c.b[1] * raw_[2].values[f] + c.b[2] * raw_[3].values[f] +
                    c.c * raw_[4].values[f];
  return out;
}

VField project_P(const VField& g, MacroCoeffs* coeffs) {
  NullSpaceBasis basis(*g.grid);
  return basis.project(g, coeffs);
}

VField apply_L1(const VField& g, const CollisionWorkspace& w) {
  VField sm = sqrt_maxwellian(*g.grid);
  VField out = gamma_bilinear(sm, g, w);
  for (auto& v : out.values) v = -v;
  return out;
}

VField apply_L2(const VField& g, const CollisionWorkspace& w) {
  VField sm = sqrt_maxwellian(*g.grid);
  VField out = gamma_bilinear(g, sm, w);
  for (auto& v : out.values) v = -v;
  return out;
}

VField apply_L(const VField& g, const CollisionWorkspace& w) {
  VField l1 = apply_L1(g, w);
  VField l2 = apply_L2(g, w);
  for (std::size_t i = 0; i < l1.size(); ++i) l1.values[i] += l2.values[i];
  return l1;
}

}  // namespace boltzlab
