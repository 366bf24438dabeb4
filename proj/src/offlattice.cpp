#include "boltzlab/offlattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "boltzlab/simd/kernels.hpp"

namespace boltzlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bessel_i0(double x) {
  // power series; adequate for the window parameter range (x <= ~40)
  double term = 1.0, sum = 1.0;
  double q = x * x / 4.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (k * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

SpectrumEvaluator::SpectrumEvaluator(const VField& f, EvalMode mode, int window_width)
    : grid_(f.grid), mode_(mode), width_(window_width) {
  if (f.space != Space::physical)
    throw std::invalid_argument("SpectrumEvaluator: physical-space input required");
  const VGrid& g = *grid_;
  const int n = g.n();

  {
    double m = 0;
    for (const auto& v : f.values) m += v.real();
    zero_mode_ = m * g.cell_volume();
  }

  if (mode == EvalMode::trilinear) {
    VField hat = to_fourier(f);
    coarse_.assign(hat.values.begin(), hat.values.end());
    const double scale = paper_hat_scale();
    for (std::size_t i = 0; i < coarse_.size(); ++i)
      coarse_[i] = g.on_nyquist(i) ? cplx{0.0, 0.0} : coarse_[i] * scale;
    return;
  }

  if (mode == EvalMode::exact) {
    samples_.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) samples_[i] = f.values[i].real();
    return;
  }

  // windowed: precompute B_t = sum_m (c_m / psi_hat(m)) e^{-i m x_t} on the
  // fine grid x_t = 2 pi t / nfine, with per-axis modes m = j - n/2 and
  // coefficients c_j = h * g-values along that axis (h^3 total over 3 axes).
  nfine_ = 2 * n;
  beta_ = 2.30 * width_;
  halfwidth_x_ = 0.5 * width_ * (kTwoPi / nfine_);

  // continuous window transform at integer modes, by Gauss-style quadrature
  std::vector<double> psi_hat(n);
  {
    const int q = 200;
    const double a = halfwidth_x_;
    const double i0 = bessel_i0(beta_);
    for (int m0 = -n / 2; m0 < n / 2; ++m0) {
      double acc = 0;
      for (int i = 0; i < q; ++i) {
        double x = -a + (i + 0.5) * (2 * a / q);
        double t = x / a;
        double psi = bessel_i0(beta_ * std::sqrt(std::max(0.0, 1.0 - t * t))) / i0;
        acc += psi * std::cos(m0 * x);
      }
      psi_hat[m0 + n / 2] = acc * (2 * a / q) * (nfine_ / kTwoPi);
    }
  }

  // deconvolved coefficients then fine-grid transform, axis by axis
  const int nf = nfine_;
  std::vector<cplx> cur(f.values);
  for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = cur[i].real();
  std::vector<cplx> next;
  // per-axis transform: modes j (coeff index) -> fine points t
  std::vector<cplx> T(static_cast<std::size_t>(nf) * n);
  for (int t = 0; t < nf; ++t)
    for (int j = 0; j < n; ++j) {
      int m = j - n / 2;
      double x = kTwoPi * t / nf;
      // e^{-i m x} / psi_hat(m), times h for this axis's measure factor
      double c = g.spacing() / psi_hat[j];
      T[static_cast<std::size_t>(t) * n + j] = cplx{std::cos(m * x) * c, -std::sin(m * x) * c};
    }
  const auto& K = simd::kernels();
  // three passes transform leading axis then rotate (ni -> nf each pass)
  int dims[3] = {n, n, n};
  for (int pass = 0; pass < 3; ++pass) {
    const int ni = dims[0];
    const std::size_t rest = static_cast<std::size_t>(dims[1]) * dims[2];
    next.assign(static_cast<std::size_t>(nf) * rest, cplx{0, 0});
    for (int t = 0; t < nf; ++t) {
      cplx* row = next.data() + static_cast<std::size_t>(t) * rest;
      for (int j = 0; j < ni; ++j)
        K.cplx_axpy(row, cur.data() + static_cast<std::size_t>(j) * rest,
                    T[static_cast<std::size_t>(t) * n + j], rest);
    }
    // rotate axes: [t, d1, d2] -> [d1, d2, t]
    cur.assign(next.size(), cplx{0, 0});
    for (int t = 0; t < nf; ++t)
      for (int d1 = 0; d1 < dims[1]; ++d1)
        for (int d2 = 0; d2 < dims[2]; ++d2)
          cur[(static_cast<std::size_t>(d1) * dims[2] + d2) * nf + t] =
              next[(static_cast<std::size_t>(t) * dims[1] + d1) * dims[2] + d2];
    dims[0] = dims[1];
    dims[1] = dims[2];
    dims[2] = nf;
  }
  fine_ = std::move(cur);
}

cplx SpectrumEvaluator::eval(const double p[3]) const {
  switch (mode_) {
    case EvalMode::trilinear:
      return eval_trilinear(p);
    case EvalMode::windowed:
      return eval_windowed(p);
    case EvalMode::exact:
      return eval_exact(p);
  }
  return {};
}

cplx SpectrumEvaluator::eval_trilinear(const double p[3]) const {
  const VGrid& g = *grid_;
  const int n = g.n();
  const int half = n / 2;
  double t[3];
  int i0[3];
  double fr[3];
  for (int a = 0; a < 3; ++a) {
    t[a] = p[a] / g.dxi();
    i0[a] = static_cast<int>(std::floor(t[a]));
    fr[a] = t[a] - i0[a];
  }
  cplx out{0, 0};
  for (int dz = 0; dz < 2; ++dz)
    for (int dy = 0; dy < 2; ++dy)
      for (int dx = 0; dx < 2; ++dx) {
        int ii = i0[0] + dx, jj = i0[1] + dy, kk = i0[2] + dz;
        // outside the symmetric band -> 0 (spectrum truncated to the grid ball)
        if (ii < -(half - 1) || ii > half - 1 || jj < -(half - 1) || jj > half - 1 ||
            kk < -(half - 1) || kk > half - 1)
          continue;
        double w = (dx ? fr[0] : 1 - fr[0]) * (dy ? fr[1] : 1 - fr[1]) * (dz ? fr[2] : 1 - fr[2]);
        int iw = (ii % n + n) % n, jw = (jj % n + n) % n, kw = (kk % n + n) % n;
        out += w * coarse_[g.flat(iw, jw, kw)];
      }
  return out;
}

cplx SpectrumEvaluator::eval_windowed(const double p[3]) const {
  const VGrid& g = *grid_;
  const int nf = nfine_;
  const double i0b = bessel_i0(beta_);
  // x = h * p, 2pi-periodic; fine spacing hx = 2pi/nf
  const double hx = kTwoPi / nf;
  double wts[3][32];
  int base[3];
  for (int a = 0; a < 3; ++a) {
    double x = g.spacing() * p[a];
    double tf = x / hx;
    // taps centered on x: indices base..base+width-1
    int b = static_cast<int>(std::floor(tf)) - width_ / 2 + 1;
    base[a] = b;
    for (int q = 0; q < width_; ++q) {
      double dx = x - (b + q) * hx;
      double u = dx / halfwidth_x_;
      double val = 0;
      if (std::abs(u) < 1.0) val = bessel_i0(beta_ * std::sqrt(1.0 - u * u)) / i0b;
      wts[a][q] = val;
    }
  }
  cplx acc{0, 0};
  for (int qx = 0; qx < width_; ++qx) {
    int ix = ((base[0] + qx) % nf + nf) % nf;
    for (int qy = 0; qy < width_; ++qy) {
      int iy = ((base[1] + qy) % nf + nf) % nf;
      double wxy = wts[0][qx] * wts[1][qy];
      cplx rowacc{0, 0};
      const cplx* row = fine_.data() + (static_cast<std::size_t>(ix) * nf + iy) * nf;
      for (int qz = 0; qz < width_; ++qz) {
        int iz = ((base[2] + qz) % nf + nf) % nf;
        rowacc += wts[2][qz] * row[iz];
      }
      acc += wxy * rowacc;
    }
  }
  return acc;
}

cplx SpectrumEvaluator::eval_exact(const double p[3]) const {
  const VGrid& g = *grid_;
  const int n = g.n();
  thread_local std::vector<double> ph_re, ph_im, s1re, s1im, s2re, s2im;
  ph_re.resize(3 * n);
  ph_im.resize(3 * n);
  for (int a = 0; a < 3; ++a)
    for (int j = 0; j < n; ++j) {
      double phase = -g.v1(j) * p[a];
      ph_re[a * n + j] = std::cos(phase);
      ph_im[a * n + j] = std::sin(phase);
    }
  const auto& K = simd::kernels();
  // contract z axis: s1[i,j] = sum_k f[i,j,k] e^{-i v_k p_z}
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  s1re.resize(n2);
  s1im.resize(n2);
  for (std::size_t r = 0; r < n2; ++r) {
    cplx c = K.dot_real_cplx(samples_.data() + r * n, &ph_re[2 * n], &ph_im[2 * n], n);
    s1re[r] = c.real();
    s1im[r] = c.imag();
  }
  // contract y axis
  s2re.resize(n);
  s2im.resize(n);
  for (int i = 0; i < n; ++i) {
    double are = 0, aim = 0;
    for (int j = 0; j < n; ++j) {
      double pr = ph_re[n + j], pi = ph_im[n + j];
      double xr = s1re[static_cast<std::size_t>(i) * n + j];
      double xi = s1im[static_cast<std::size_t>(i) * n + j];
      are += xr * pr - xi * pi;
      aim += xr * pi + xi * pr;
    }
    s2re[i] = are;
    s2im[i] = aim;
  }
  // contract x axis
  double are = 0, aim = 0;
  for (int i = 0; i < n; ++i) {
    double pr = ph_re[i], pi = ph_im[i];
    are += s2re[i] * pr - s2im[i] * pi;
    aim += s2re[i] * pi + s2im[i] * pr;
  }
  double vol = g.cell_volume();
  return {are * vol, aim * vol};
}

}  // namespace boltzlab
