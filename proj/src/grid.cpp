#include "boltzlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "boltzlab/simd/kernels.hpp"

namespace boltzlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInvTwoPi32 = std::pow(kTwoPi, -1.5);
}  // namespace

VGrid::VGrid(int n, double L) : n_(n), L_(L) {
  if (n < 8 || n > 64) throw std::invalid_argument("grid: n must be in [8, 64]");
  if (n % 2 != 0) throw std::invalid_argument("grid: n must be even");
  if (!(L > 0.0)) throw std::invalid_argument("grid: L must be positive");
  h_ = 2.0 * L / n;
  dxi_ = std::numbers::pi / L;
  fwd_.resize(static_cast<std::size_t>(n) * n);
  bwd_.resize(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      double phase = v1(j) * xi1(k);
      fwd_[static_cast<std::size_t>(k) * n + j] = {std::cos(phase), -std::sin(phase)};
      bwd_[static_cast<std::size_t>(j) * n + k] = {std::cos(phase), std::sin(phase)};
    }
  }
}

VField make_field(const VGrid& g) { return VField(g, Space::physical); }

VField maxwellian(const VGrid& g) {
  VField f(g, Space::physical);
  const int n = g.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double r2 = g.v1(i) * g.v1(i) + g.v1(j) * g.v1(j) + g.v1(k) * g.v1(k);
        f.values[g.flat(i, j, k)] = kInvTwoPi32 * std::exp(-r2 / 2.0);
      }
  return f;
}

VField sqrt_maxwellian(const VGrid& g) {
  VField f(g, Space::physical);
  const int n = g.n();
  const double c = std::sqrt(kInvTwoPi32);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double r2 = g.v1(i) * g.v1(i) + g.v1(j) * g.v1(j) + g.v1(k) * g.v1(k);
        f.values[g.flat(i, j, k)] = c * std::exp(-r2 / 4.0);
      }
  return f;
}

namespace {

// out[k, rest] = sum_j T[k, j] in[j, rest]; the leading axis is transformed,
// then axes are rotated so three applications transform all of them.
void apply_axis(const std::vector<cplx>& T, const cplx* in, cplx* out, int n) {
  const std::size_t rest = static_cast<std::size_t>(n) * n;
  const auto& K = simd::kernels();
  for (int k = 0; k < n; ++k) {
    cplx* orow = out + static_cast<std::size_t>(k) * rest;
    for (std::size_t r = 0; r < rest; ++r) orow[r] = 0.0;
    for (int j = 0; j < n; ++j) {
      K.cplx_axpy(orow, in + static_cast<std::size_t>(j) * rest,
                  T[static_cast<std::size_t>(k) * n + j], rest);
    }
  }
}

// rotate axes: dst[j,k,i] = src[i,j,k]
void rotate(const cplx* src, cplx* dst, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        dst[(static_cast<std::size_t>(j) * n + k) * n + i] =
            src[(static_cast<std::size_t>(i) * n + j) * n + k];
}

VField transform(const VField& f, const std::vector<cplx>& T, double scale, Space out_space) {
  const VGrid& g = *f.grid;
  const int n = g.n();
  VField out(g, out_space);
  std::vector<cplx> tmp(g.size());
  // transform axis 0, rotate; after three rounds the layout is restored
  std::vector<cplx> cur(f.values);
  for (int pass = 0; pass < 3; ++pass) {
    apply_axis(T, cur.data(), out.values.data(), n);
    rotate(out.values.data(), tmp.data(), n);
    cur.swap(tmp);
  }
  for (std::size_t i = 0; i < cur.size(); ++i) out.values[i] = cur[i] * scale;
  return out;
}

}  // namespace

VField to_fourier(const VField& f) {
  if (f.space != Space::physical)
    throw std::invalid_argument("to_fourier: field already in fourier space");
  const VGrid& g = *f.grid;
  const double cf = g.cell_volume() * kInvTwoPi32;
  return transform(f, g.fwd_table(), cf, Space::fourier);
}

VField to_physical(const VField& f) {
  if (f.space != Space::fourier)
    throw std::invalid_argument("to_physical: field already in physical space");
  const VGrid& g = *f.grid;
  const double cb = g.xi_cell_volume() * kInvTwoPi32;
  return transform(f, g.bwd_table(), cb, Space::physical);
}

VField apply_weight(const VField& f, double ell) {
  if (f.space != Space::physical)
    throw std::invalid_argument("apply_weight: physical-space input required");
  const VGrid& g = *f.grid;
  VField out(g, Space::physical);
  const int n = g.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double r2 = g.v1(i) * g.v1(i) + g.v1(j) * g.v1(j) + g.v1(k) * g.v1(k);
        std::size_t f0 = g.flat(i, j, k);
        out.values[f0] = f.values[f0] * std::pow(1.0 + r2, ell / 2.0);
      }
  return out;
}

VField band_limit(const VField& f) {
  VField hat = f.space == Space::fourier ? f : to_fourier(f);
  const VGrid& g = *f.grid;
  for (std::size_t i = 0; i < hat.size(); ++i)
    if (g.on_nyquist(i)) hat.values[i] = 0.0;
  return f.space == Space::fourier ? hat : to_physical(hat);
}

double l2_norm(const VField& f) {
  const VGrid& g = *f.grid;
  double w = f.space == Space::physical ? g.cell_volume() : g.xi_cell_volume();
  const auto* d = reinterpret_cast<const double*>(f.values.data());
  double s = simd::kernels().dot(d, d, 2 * f.size());
  return std::sqrt(w * s);
}

double inner_product(const VField& a, const VField& b) {
  if (a.space != b.space || a.grid != b.grid)
    throw std::invalid_argument("inner_product: mismatched fields");
  const VGrid& g = *a.grid;
  double w = a.space == Space::physical ? g.cell_volume() : g.xi_cell_volume();
  const auto* da = reinterpret_cast<const double*>(a.values.data());
  const auto* db = reinterpret_cast<const double*>(b.values.data());
  // Re <a, b> = sum (ar br + ai bi)
  return w * simd::kernels().dot(da, db, 2 * a.size());
}

Moments moments(const VField& f) {
  if (f.space != Space::physical)
    throw std::invalid_argument("moments: physical-space input required");
  const VGrid& g = *f.grid;
  Moments m;
  const int n = g.n();
  double mass = 0, mom[3] = {0, 0, 0}, en = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double x = g.v1(i), y = g.v1(j), z = g.v1(k);
        double val = f.values[g.flat(i, j, k)].real();
        mass += val;
        mom[0] += val * x;
        mom[1] += val * y;
        mom[2] += val * z;
        en += val * (x * x + y * y + z * z);
      }
  double w = g.cell_volume();
  m.mass = w * mass;
  for (int a = 0; a < 3; ++a) m.momentum[a] = w * mom[a];
  m.energy = w * en;
  return m;
}

double sobolev_norm(const VField& f, double s, double ell) {
  if (s < 0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  const VField* phys = &f;
  VField tmp;
  if (f.space == Space::fourier) {
    tmp = to_physical(f);
    phys = &tmp;
  }
  VField weighted = ell == 0.0 ? *phys : apply_weight(*phys, ell);
  VField hat = to_fourier(weighted);
  const VGrid& g = *f.grid;
  double acc = 0;
  for (std::size_t idx = 0; idx < hat.size(); ++idx) {
    int i, j, k;
    g.coords(idx, i, j, k);
    double xr = g.xi1(i), yr = g.xi1(j), zr = g.xi1(k);
    double mult = std::pow(1.0 + xr * xr + yr * yr + zr * zr, s);
    acc += mult * std::norm(hat.values[idx]);
  }
  return std::sqrt(g.xi_cell_volume() * acc);
}

}  // namespace boltzlab
