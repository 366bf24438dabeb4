#pragma once
// Velocity-space discretization: the truncated uniform grid on [-L, L)^3, its
// dual frequency lattice, the unitary transform pair, weights, Maxwellian,
// and weighted/fractional Sobolev norms.
//
// Conventions (used throughout the project):
//   unitary hat   F(xi_k) = cf * sum_j f(v_j) e^{-i v_j . xi_k},
//                 cf = h^3 (2 pi)^{-3/2}
//   inverse       f(v_j)  = cb * sum_k F(xi_k) e^{+i v_j . xi_k},
//                 cb = (pi/L)^3 (2 pi)^{-3/2}
// so the discrete Parseval identity h^3 sum|f|^2 = (pi/L)^3 sum|F|^2 is exact.
// "Mass-normalized" (physics-convention) spectra are (2 pi)^{3/2} times the
// unitary ones; helpers below expose that scale where formulas need it.
//
// Real fields are band-limited to the symmetric lattice |k_axis| <= n/2 - 1:
// the unpaired Nyquist planes are dropped by the collision and norm pipelines
// so that conjugate symmetry is exact.

#include <complex>
#include <cstddef>
#include <vector>

namespace boltzlab {

using cplx = std::complex<double>;

enum class Space { physical, fourier };

class VGrid {
 public:
  // n even, 8 <= n <= 64; L > 0. Throws std::invalid_argument otherwise.
  VGrid(int n, double L);

  int n() const { return n_; }
  double half_width() const { return L_; }
  double spacing() const { return h_; }
  double dxi() const { return dxi_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  // velocity coordinate along one axis, index 0..n-1 (v = -L + i h)
  double v1(int i) const { return -L_ + h_ * i; }
  // frequency along one axis in FFT index order: k in {0..n/2-1, -n/2..-1}
  double xi1(int i) const { return dxi_ * kindex(i); }
  int kindex(int i) const { return i < n_ / 2 ? i : i - n_; }

  std::size_t flat(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  void coords(std::size_t f, int& i, int& j, int& k) const {
    k = static_cast<int>(f % n_);
    j = static_cast<int>((f / n_) % n_);
    i = static_cast<int>(f / (static_cast<std::size_t>(n_) * n_));
  }

  // quadrature weight of one node (trapezoid = h^3 on the periodic box)
  double cell_volume() const { return h_ * h_ * h_; }
  double xi_cell_volume() const { return dxi_ * dxi_ * dxi_; }

  // true if the flat Fourier index has an unpaired Nyquist component
  bool on_nyquist(std::size_t f) const {
    int i, j, k;
    coords(f, i, j, k);
    return i == n_ / 2 || j == n_ / 2 || k == n_ / 2;
  }

  // forward/backward one-axis transform tables, row-major [k][j]
  const std::vector<cplx>& fwd_table() const { return fwd_; }
  const std::vector<cplx>& bwd_table() const { return bwd_; }

 private:
  int n_;
  double L_, h_, dxi_;
  std::vector<cplx> fwd_, bwd_;
};

struct VField {
  const VGrid* grid = nullptr;
  Space space = Space::physical;
  std::vector<cplx> values;

  VField() = default;
  VField(const VGrid& g, Space s) : grid(&g), space(s), values(g.size()) {}

  std::size_t size() const { return values.size(); }
};

// ---- construction -----------------------------------------------------

VField make_field(const VGrid& g);                  // zero physical field
VField maxwellian(const VGrid& g);                  // mu(v), sampled exactly
VField sqrt_maxwellian(const VGrid& g);             // mu^(1/2)(v)

// ---- transforms --------------------------------------------------------

VField to_fourier(const VField& f);   // requires physical input
VField to_physical(const VField& f);  // requires fourier input

// Scale factor turning a unitary spectrum into a mass-normalized one.
inline double paper_hat_scale() { return 15.749609945722419; }  // (2 pi)^{3/2}

// ---- pointwise ops ------------------------------------------------------

// multiply by (1 + |v|^2)^(l/2); physical space only
VField apply_weight(const VField& f, double ell);

// drop the unpaired Nyquist planes of a physical field (band-limit symmetric)
VField band_limit(const VField& f);

// ---- reductions ---------------------------------------------------------

// L2 norm with the measure of the field's space (Parseval-consistent)
double l2_norm(const VField& f);
double inner_product(const VField& a, const VField& b);  // same space, real part

struct Moments {
  double mass = 0;
  double momentum[3] = {0, 0, 0};
  double energy = 0;
};
Moments moments(const VField& f);  // physical space

// || Lambda^s (W^ell f) ||_{L2}; s >= 0
double sobolev_norm(const VField& f, double s, double ell);

}  // namespace boltzlab
