#include "boltzlab/collision.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "boltzlab/parallel.hpp"
#include "boltzlab/simd/kernels.hpp"

namespace boltzlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kMuHalfNorm = std::pow(kTwoPi, -0.75);  // (2 pi)^{-3/4}

using simd::kernels;

// real snapshot of a physical field, band-limited to the symmetric lattice
std::vector<double> real_snapshot(const VField& f) {
  if (f.space != Space::physical)
    throw std::invalid_argument("collision: physical-space input required");
  for (const auto& v : f.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("collision: NaN/Inf in input field");
  VField bl = band_limit(f);
  std::vector<double> out(bl.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = bl.values[i].real();
  return out;
}

double field_mass(const VGrid& g, const std::vector<double>& f) {
  return g.cell_volume() * kernels().sum(f.data(), f.size());
}

// integer periodic shift: dst[v] = src[v + s] with s in grid indices
void roll(const VGrid& g, const std::vector<double>& src, const int s[3],
          std::vector<double>& dst) {
  const int n = g.n();
  dst.resize(src.size());
  int sx = ((s[0] % n) + n) % n, sy = ((s[1] % n) + n) % n, sz = ((s[2] % n) + n) % n;
  for (int i = 0; i < n; ++i) {
    int is = i + sx < n ? i + sx : i + sx - n;
    for (int j = 0; j < n; ++j) {
      int js = j + sy < n ? j + sy : j + sy - n;
      const double* srow = src.data() + g.flat(is, js, 0);
      double* drow = dst.data() + g.flat(i, j, 0);
      int len1 = n - sz;
      for (int k = 0; k < len1; ++k) drow[k] = srow[k + sz];
      for (int k = len1; k < n; ++k) drow[k] = srow[k + sz - n];
    }
  }
}

// ---- trilinear fractional shift, factored per axis ------------------------

// one axis pass: dst[... i ...] = c0 src[... i+b ...] + c1 src[... i+b+1 ...]
void shift_axis0(const VGrid& g, const std::vector<double>& src, int b, double c0,
                 double c1, std::vector<double>& dst) {
  const int n = g.n();
  const std::size_t plane = static_cast<std::size_t>(n) * n;
  dst.resize(src.size());
  for (int i = 0; i < n; ++i) {
    int ia = (i + b) % n;
    if (ia < 0) ia += n;
    int ib = ia + 1 == n ? 0 : ia + 1;
    kernels().lerp(dst.data() + i * plane, src.data() + ia * plane,
                   src.data() + ib * plane, c0, c1, plane);
  }
}

void shift_axis1(const VGrid& g, const std::vector<double>& src, int b, double c0,
                 double c1, std::vector<double>& dst) {
  const int n = g.n();
  dst.resize(src.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int ja = (j + b) % n;
      if (ja < 0) ja += n;
      int jb = ja + 1 == n ? 0 : ja + 1;
      kernels().lerp(dst.data() + g.flat(i, j, 0), src.data() + g.flat(i, ja, 0),
                     src.data() + g.flat(i, jb, 0), c0, c1, n);
    }
}

void shift_axis2(const VGrid& g, const std::vector<double>& src, int b, double c0,
                 double c1, std::vector<double>& dst) {
  const int n = g.n();
  dst.resize(src.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double* srow = src.data() + g.flat(i, j, 0);
      double* drow = dst.data() + g.flat(i, j, 0);
      for (int k = 0; k < n; ++k) {
        int ka = (k + b) % n;
        if (ka < 0) ka += n;
        int kb = ka + 1 == n ? 0 : ka + 1;
        drow[k] = c0 * srow[ka] + c1 * srow[kb];
      }
    }
}

struct TrilinearShifter {
  const VGrid* g;
  const std::vector<double>* src;
  mutable std::vector<double> t1, t2;

  // dst = src evaluated at v + d (periodic trilinear)
  void shift(const double d[3], std::vector<double>& dst) const {
    const double h = g->spacing();
    int b[3];
    double fr[3];
    for (int a = 0; a < 3; ++a) {
      double t = d[a] / h;
      double fl = std::floor(t);
      b[a] = static_cast<int>(fl);
      fr[a] = t - fl;
    }
    shift_axis0(*g, *src, b[0], 1 - fr[0], fr[0], t1);
    shift_axis1(*g, t1, b[1], 1 - fr[1], fr[1], t2);
    shift_axis2(*g, t2, b[2], 1 - fr[2], fr[2], dst);
  }
};

// ---- exact band-limited fractional shift via spectral phase ---------------

struct SpectralShifter {
  const VGrid* g;
  std::vector<cplx> hat;  // unitary lattice hat, Nyquist planes zeroed
  mutable std::vector<cplx> scratch, swp;

  SpectralShifter(const VGrid& grid, const std::vector<double>& samples) : g(&grid) {
    VField f(grid, Space::physical);
    for (std::size_t i = 0; i < samples.size(); ++i) f.values[i] = samples[i];
    VField h = to_fourier(f);
    hat.assign(h.values.begin(), h.values.end());
    for (std::size_t i = 0; i < hat.size(); ++i)
      if (grid.on_nyquist(i)) hat[i] = 0.0;
  }

  void shift(const double d[3], std::vector<double>& dst) const {
    const int n = g->n();
    scratch.resize(hat.size());
    // separable phase e^{i xi . d}
    thread_local std::vector<cplx> px, py, pz;
    px.resize(n);
    py.resize(n);
    pz.resize(n);
    for (int i = 0; i < n; ++i) {
      px[i] = cplx{std::cos(g->xi1(i) * d[0]), std::sin(g->xi1(i) * d[0])};
      py[i] = cplx{std::cos(g->xi1(i) * d[1]), std::sin(g->xi1(i) * d[1])};
      pz[i] = cplx{std::cos(g->xi1(i) * d[2]), std::sin(g->xi1(i) * d[2])};
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cplx cij = px[i] * py[j];
        const cplx* srow = hat.data() + g->flat(i, j, 0);
        cplx* drow = scratch.data() + g->flat(i, j, 0);
        for (int k = 0; k < n; ++k) drow[k] = cij * pz[k] * srow[k];
      }
    // inverse transform (same machinery as to_physical)
    VField tmp(*g, Space::fourier);
    tmp.values.swap(scratch);
    VField phys = to_physical(tmp);
    tmp.values.swap(scratch);
    dst.resize(phys.size());
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = phys.values[i].real();
  }
};

// analytic Gaussian sample of sqrt(mu) at v + d, built from per-axis factors:
// sqrt(mu)(v + d) = (2pi)^{-3/4} prod_a exp(-(v_a + d_a)^2 / 4)
void sqrtmu_shifted(const VGrid& g, const double d[3], std::vector<double>& dst,
                    std::vector<double>& qx, std::vector<double>& qy,
                    std::vector<double>& qz) {
  const int n = g.n();
  qx.resize(n);
  qy.resize(n);
  qz.resize(n);
  for (int j = 0; j < n; ++j) {
    double x = g.v1(j);
    qx[j] = kMuHalfNorm * std::exp(-(x + d[0]) * (x + d[0]) / 4.0);
    qy[j] = std::exp(-(x + d[1]) * (x + d[1]) / 4.0);
    qz[j] = std::exp(-(x + d[2]) * (x + d[2]) / 4.0);
  }
  dst.resize(g.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double cij = qx[i] * qy[j];
      double* drow = dst.data() + g.flat(i, j, 0);
      for (int k = 0; k < n; ++k) drow[k] = cij * qz[k];
    }
}

// minimum-image offset list (u = 0 first; callers skip it)
struct UList {
  std::vector<std::array<int, 3>> idx;   // integer offsets
  std::vector<std::array<double, 3>> u;  // physical offsets
  std::vector<double> norm;
};

UList make_ulist(const VGrid& g) {
  const int n = g.n();
  UList list;
  list.idx.reserve(g.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        int ui = i < n / 2 ? i : i - n;
        int uj = j < n / 2 ? j : j - n;
        int uk = k < n / 2 ? k : k - n;
        list.idx.push_back({ui, uj, uk});
        double ux = ui * g.spacing(), uy = uj * g.spacing(), uz = uk * g.spacing();
        list.u.push_back({ux, uy, uz});
        list.norm.push_back(std::sqrt(ux * ux + uy * uy + uz * uz));
      }
  return list;
}

// per-(u, sigma) geometry: node sigma about the axis (v - v_*)/|..| = -u/|u|,
// post-collisional offsets dm (v'_* side) and dp (v' side)
struct NodeGeometry {
  std::vector<std::array<double, 3>> dm, dp;
  std::vector<double> w;  // theta weight * b * sin(theta) * dphi
};

NodeGeometry node_geometry(const CollisionWorkspace& ws, const std::array<double, 3>& u,
                           double un) {
  const ThetaRule& tr = ws.rule;
  const int nphi = ws.params.n_phi;
  std::array<double, 3> axis = {-u[0] / un, -u[1] / un, -u[2] / un};
  std::array<double, 3> e1, e2;
  orthonormal_frame(axis, e1, e2);
  NodeGeometry geo;
  const std::size_t nn = tr.theta.size() * nphi;
  geo.dm.resize(nn);
  geo.dp.resize(nn);
  geo.w.resize(nn);
  const double dphi = kTwoPi / nphi;
  std::size_t q = 0;
  for (std::size_t it = 0; it < tr.theta.size(); ++it) {
    double th = tr.theta[it];
    double ct = std::cos(th), st = std::sin(th);
    double wt = tr.weight[it] * kernel_b(th, ws.params) * st * dphi;
    for (int ip = 0; ip < nphi; ++ip) {
      double phi = dphi * ip;
      double cp = std::cos(phi), sp = std::sin(phi);
      double sig[3] = {ct * axis[0] + st * (cp * e1[0] + sp * e2[0]),
                       ct * axis[1] + st * (cp * e1[1] + sp * e2[1]),
                       ct * axis[2] + st * (cp * e1[2] + sp * e2[2])};
      for (int a = 0; a < 3; ++a) {
        geo.dm[q][a] = 0.5 * (u[a] - un * sig[a]);
        geo.dp[q][a] = 0.5 * (u[a] + un * sig[a]);
      }
      geo.w[q] = wt;
      ++q;
    }
  }
  return geo;
}

VField finish_real_field(const VGrid& g, std::vector<double>&& vals) {
  VField out(g, Space::physical);
  for (std::size_t i = 0; i < vals.size(); ++i) out.values[i] = vals[i];
  return out;
}

// shared gain loop for q_direct / gamma_bilinear
std::vector<double> direct_gain(const CollisionWorkspace& ws,
                                const std::vector<double>& star,
                                const std::vector<double>& plain, bool sqrtmu_weight) {
  const VGrid& g = *ws.grid;
  const UList ul = make_ulist(g);
  const bool trig = ws.interpolation_mode == EvalMode::exact;
  std::vector<double> mu_half;
  if (sqrtmu_weight) {
    std::vector<double> t1, t2, t3;
    double zero[3] = {0, 0, 0};
    sqrtmu_shifted(g, zero, mu_half, t1, t2, t3);
  }

  const std::size_t nb = block_count_for(ul.idx.size());
  std::vector<std::vector<double>> block_acc(nb);
  parallel_blocks(ul.idx.size(), [&](std::size_t blk, std::size_t lo, std::size_t hi) {
    std::vector<double>& acc = block_acc[blk];
    acc.assign(g.size(), 0.0);
    std::vector<double> A(g.size()), B(g.size()), Su;
    TrilinearShifter tstar{&g, &star, {}, {}}, tplain{&g, &plain, {}, {}};
    std::unique_ptr<SpectralShifter> sstar, splain;
    if (trig) {
      sstar = std::make_unique<SpectralShifter>(g, star);
      splain = std::make_unique<SpectralShifter>(g, plain);
    }
    for (std::size_t q = lo; q < hi; ++q) {
      if (ul.norm[q] == 0.0) continue;
      NodeGeometry geo = node_geometry(ws, ul.u[q], ul.norm[q]);
      if (sqrtmu_weight) {
        int sft[3] = {ul.idx[q][0], ul.idx[q][1], ul.idx[q][2]};
        roll(g, mu_half, sft, Su);
      }
      for (std::size_t nq = 0; nq < geo.w.size(); ++nq) {
        if (trig) {
          sstar->shift(geo.dm[nq].data(), A);
          splain->shift(geo.dp[nq].data(), B);
        } else {
          tstar.shift(geo.dm[nq].data(), A);
          tplain.shift(geo.dp[nq].data(), B);
        }
        if (sqrtmu_weight)
          kernels().prod3_acc(acc.data(), Su.data(), A.data(), B.data(), geo.w[nq],
                              g.size());
        else
          kernels().prod_acc(acc.data(), A.data(), B.data(), geo.w[nq], g.size());
      }
    }
  });
  // serial block combination, fixed order
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t b = 0; b < nb; ++b)
    if (!block_acc[b].empty())
      kernels().axpy(out.data(), block_acc[b].data(), 1.0, g.size());
  const double h3 = g.cell_volume();
  for (auto& v : out) v *= h3;
  return out;
}

}  // namespace

CollisionWorkspace::CollisionWorkspace(const VGrid& g, const KernelParams& p, EvalMode mode)
    : grid(&g), params(p), interpolation_mode(mode) {
  p.validate();
  rule = theta_rule(p);
}

void CollisionWorkspace::check_direct_size() const {
  if (grid->n() > direct_n_limit && !allow_large_direct)
    throw std::invalid_argument(
        "direct quadrature: grid exceeds the cost guard; set allow_large_direct");
}

VField q_bobylev(const VField& gfield, const VField& ffield, const CollisionWorkspace& ws) {
  if (gfield.grid != ffield.grid || gfield.grid != ws.grid)
    throw std::invalid_argument("q_bobylev: grid mismatch");
  const VGrid& g = *ws.grid;
  std::vector<double> gs = real_snapshot(gfield);
  std::vector<double> fs = real_snapshot(ffield);

  SpectrumEvaluator ge(finish_real_field(g, std::vector<double>(gs)), ws.interpolation_mode,
                       ws.window_width);
  SpectrumEvaluator fe(finish_real_field(g, std::vector<double>(fs)), ws.interpolation_mode,
                       ws.window_width);

  // exact lattice hat of f for the loss term (mass-normalized, Nyquist zeroed)
  VField fhat = to_fourier(finish_real_field(g, std::vector<double>(fs)));
  const double scale = paper_hat_scale();
  const double g0 = ge.zero_mode().real();
  const double capb = cap_b_integral(ws.params);

  const ThetaRule& tr = ws.rule;
  const int nphi = ws.params.n_phi;
  const double dphi = kTwoPi / nphi;

  VField qhat(g, Space::fourier);
  parallel_blocks(g.size(), [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t m = lo; m < hi; ++m) {
      if (g.on_nyquist(m)) {
        qhat.values[m] = 0.0;
        continue;
      }
      int i, j, k;
      g.coords(m, i, j, k);
      double xi[3] = {g.xi1(i), g.xi1(j), g.xi1(k)};
      double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
      if (r == 0.0) {
        qhat.values[m] = 0.0;  // exact mass conservation
        continue;
      }
      std::array<double, 3> axis = {xi[0] / r, xi[1] / r, xi[2] / r};
      std::array<double, 3> e1, e2;
      orthonormal_frame(axis, e1, e2);
      cplx acc{0, 0};
      for (std::size_t it = 0; it < tr.theta.size(); ++it) {
        double th = tr.theta[it];
        double ct = std::cos(th), st = std::sin(th);
        double wt = tr.weight[it] * kernel_b(th, ws.params) * st * dphi;
        for (int ip = 0; ip < nphi; ++ip) {
          double phi = dphi * ip;
          double cp = std::cos(phi), sp = std::sin(phi);
          double sig[3] = {ct * axis[0] + st * (cp * e1[0] + sp * e2[0]),
                           ct * axis[1] + st * (cp * e1[1] + sp * e2[1]),
                           ct * axis[2] + st * (cp * e1[2] + sp * e2[2])};
          double xp[3], xm[3];
          for (int a = 0; a < 3; ++a) {
            xp[a] = 0.5 * (xi[a] + r * sig[a]);
            xm[a] = 0.5 * (xi[a] - r * sig[a]);
          }
          acc += wt * (ge.eval(xm) * fe.eval(xp));
        }
      }
      cplx fxi = fhat.values[m] * scale;
      qhat.values[m] = (acc - capb * g0 * fxi) / scale;
    }
  });

  VField out = to_physical(qhat);
  double nrm2 = 0, imag2 = 0;
  for (const auto& v : out.values) {
    nrm2 += std::norm(v);
    imag2 += v.imag() * v.imag();
  }
  if (nrm2 > 0 && std::sqrt(imag2) > 1e-10 * std::sqrt(nrm2))
    throw std::runtime_error("q_bobylev: imaginary residue above tolerance");
  for (auto& v : out.values) v = v.real();
  return out;
}

VField q_direct(const VField& gfield, const VField& ffield, const CollisionWorkspace& ws) {
  if (gfield.grid != ffield.grid || gfield.grid != ws.grid)
    throw std::invalid_argument("q_direct: grid mismatch");
  ws.check_direct_size();
  const VGrid& g = *ws.grid;
  std::vector<double> gs = real_snapshot(gfield);
  std::vector<double> fs = real_snapshot(ffield);
  std::vector<double> out = direct_gain(ws, gs, fs, false);
  // loss, separable over the u lattice with the u = 0 diagonal removed
  // (the diagonal contributes zero to the operator and is skipped by the gain)
  const double capb = cap_b_integral(ws.params);
  const double mg = field_mass(g, gs);
  const double h3 = g.cell_volume();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] -= capb * (mg - h3 * gs[i]) * fs[i];
  return finish_real_field(g, std::move(out));
}

VField gamma_bilinear(const VField& ffield, const VField& gfield,
                      const CollisionWorkspace& ws) {
  if (gfield.grid != ffield.grid || gfield.grid != ws.grid)
    throw std::invalid_argument("gamma_bilinear: grid mismatch");
  ws.check_direct_size();
  const VGrid& g = *ws.grid;
  std::vector<double> fs = real_snapshot(ffield);  // starred argument
  std::vector<double> gs = real_snapshot(gfield);
  std::vector<double> out = direct_gain(ws, fs, gs, true);
  // loss: capb * mass(sqrt(mu) f) * g(v)
  std::vector<double> mu_half, t1, t2, t3;
  double zero[3] = {0, 0, 0};
  sqrtmu_shifted(g, zero, mu_half, t1, t2, t3);
  std::vector<double> wf(g.size());
  for (std::size_t i = 0; i < wf.size(); ++i) wf[i] = mu_half[i] * fs[i];
  const double m = field_mass(g, wf);
  const double capb = cap_b_integral(ws.params);
  const double h3 = g.cell_volume();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] -= capb * (m - h3 * wf[i]) * gs[i];
  return finish_real_field(g, std::move(out));
}

double cancellation_apply(const VField& ffield, const CollisionWorkspace& ws,
                          const VField& probe) {
  if (ffield.grid != ws.grid || probe.grid != ws.grid)
    throw std::invalid_argument("cancellation_apply: grid mismatch");
  ws.check_direct_size();
  const VGrid& g = *ws.grid;
  std::vector<double> fs = real_snapshot(ffield);
  std::vector<double> ps(g.size());
  for (std::size_t i = 0; i < ps.size(); ++i) ps[i] = probe.values[i].real();

  const UList ul = make_ulist(g);
  const bool trig = ws.interpolation_mode == EvalMode::exact;
  const std::size_t nb = block_count_for(ul.idx.size());
  std::vector<double> partial(nb, 0.0);
  parallel_blocks(ul.idx.size(), [&](std::size_t blk, std::size_t lo, std::size_t hi) {
    std::vector<double> A(g.size());
    TrilinearShifter tf{&g, &fs, {}, {}};
    std::unique_ptr<SpectralShifter> fsp;
    if (trig) fsp = std::make_unique<SpectralShifter>(g, fs);
    double acc = 0;
    for (std::size_t q = lo; q < hi; ++q) {
      if (ul.norm[q] == 0.0) continue;
      NodeGeometry geo = node_geometry(ws, ul.u[q], ul.norm[q]);
      for (std::size_t nq = 0; nq < geo.w.size(); ++nq) {
        if (trig)
          fsp->shift(geo.dm[nq].data(), A);
        else
          tf.shift(geo.dm[nq].data(), A);
        acc += geo.w[nq] * kernels().dot(ps.data(), A.data(), g.size());
      }
    }
    partial[blk] = acc;
  });
  double gain = combine_blocks(partial) * g.cell_volume() * g.cell_volume();
  const double capb = cap_b_integral(ws.params);
  double mp = g.cell_volume() * kernels().sum(ps.data(), ps.size());
  double mf = field_mass(g, fs);
  double diag = g.cell_volume() * g.cell_volume() * kernels().dot(ps.data(), fs.data(), ps.size());
  return gain - capb * (mf * mp - diag);
}

// ---- quadratic forms -------------------------------------------------------

namespace {

enum class FormKind { dirichlet, l1, triple_a, triple_b, squared_diff };

// evaluates the requested triple integral; for triple_a/b both terms are
// reported through the two output slots
void direct_form(const CollisionWorkspace& ws, const std::vector<double>& gs,
                 const std::vector<double>* weight_sq, FormKind kind, double& out1,
                 double& out2) {
  const VGrid& g = *ws.grid;
  const UList ul = make_ulist(g);
  const bool trig = ws.interpolation_mode == EvalMode::exact;
  std::vector<double> mu_half, mu_full, t1, t2, t3;
  double zero[3] = {0, 0, 0};
  sqrtmu_shifted(g, zero, mu_half, t1, t2, t3);
  mu_full.resize(g.size());
  for (std::size_t i = 0; i < mu_full.size(); ++i) mu_full[i] = mu_half[i] * mu_half[i];

  const std::size_t nb = block_count_for(ul.idx.size());
  std::vector<double> part1(nb, 0.0), part2(nb, 0.0);
  parallel_blocks(ul.idx.size(), [&](std::size_t blk, std::size_t lo, std::size_t hi) {
    std::vector<double> Gp(g.size()), Gm(g.size()), Su(g.size()), Wu(g.size());
    std::vector<double> Sdm(g.size()), Sdp(g.size()), b1(g.size()), b2(g.size());
    std::vector<double> Gu(g.size());
    std::vector<double> qx, qy, qz;
    TrilinearShifter tg{&g, &gs, {}, {}};
    std::unique_ptr<SpectralShifter> gsp;
    if (trig) gsp = std::make_unique<SpectralShifter>(g, gs);
    double acc1 = 0, acc2 = 0;
    for (std::size_t q = lo; q < hi; ++q) {
      if (ul.norm[q] == 0.0) continue;
      NodeGeometry geo = node_geometry(ws, ul.u[q], ul.norm[q]);
      int sft[3] = {ul.idx[q][0], ul.idx[q][1], ul.idx[q][2]};
      if (kind == FormKind::dirichlet || kind == FormKind::l1) {
        roll(g, mu_half, sft, Su);  // sqrt(mu)(v+u)
      }
      if (kind == FormKind::triple_a) roll(g, mu_full, sft, Wu);
      if (kind == FormKind::squared_diff || kind == FormKind::triple_b)
        roll(g, *weight_sq, sft, Wu);  // f^2 or g^2 at v+u
      if (kind == FormKind::dirichlet) roll(g, gs, sft, Gu);
      for (std::size_t nq = 0; nq < geo.w.size(); ++nq) {
        const double w = geo.w[nq];
        switch (kind) {
          case FormKind::l1: {
            // (sqrt(mu)'_* g' - sqrt(mu)_* g)^2
            if (trig)
              gsp->shift(geo.dp[nq].data(), Gp);
            else
              tg.shift(geo.dp[nq].data(), Gp);
            sqrtmu_shifted(g, geo.dm[nq].data(), Sdm, qx, qy, qz);
            for (std::size_t i = 0; i < g.size(); ++i) b1[i] = Sdm[i] * Gp[i];
            for (std::size_t i = 0; i < g.size(); ++i) b2[i] = Su[i] * gs[i];
            acc1 += w * kernels().diff2(b1.data(), b2.data(), g.size());
            break;
          }
          case FormKind::dirichlet: {
            // [(sqrt(mu)_* g - sqrt(mu)'_* g') + (sqrt(mu) g_* - sqrt(mu)' g'_*)]^2
            if (trig) {
              gsp->shift(geo.dp[nq].data(), Gp);
              gsp->shift(geo.dm[nq].data(), Gm);
            } else {
              tg.shift(geo.dp[nq].data(), Gp);
              tg.shift(geo.dm[nq].data(), Gm);
            }
            sqrtmu_shifted(g, geo.dm[nq].data(), Sdm, qx, qy, qz);
            sqrtmu_shifted(g, geo.dp[nq].data(), Sdp, qx, qy, qz);
            for (std::size_t i = 0; i < g.size(); ++i)
              b1[i] = Su[i] * gs[i] + mu_half[i] * Gu[i];
            for (std::size_t i = 0; i < g.size(); ++i)
              b2[i] = Sdm[i] * Gp[i] + Sdp[i] * Gm[i];
            acc1 += w * kernels().diff2(b1.data(), b2.data(), g.size());
            break;
          }
          case FormKind::triple_a:
          case FormKind::squared_diff: {
            // W(v+u) (g' - g)^2, W = mu or f^2
            if (trig)
              gsp->shift(geo.dp[nq].data(), Gp);
            else
              tg.shift(geo.dp[nq].data(), Gp);
            acc1 += w * kernels().wdiff2(Wu.data(), Gp.data(), gs.data(), g.size());
            break;
          }
          case FormKind::triple_b: {
            // g^2(v+u) (sqrt(mu)(v') - sqrt(mu)(v))^2, both factors analytic
            sqrtmu_shifted(g, geo.dp[nq].data(), Sdp, qx, qy, qz);
            acc2 += w * kernels().wdiff2(Wu.data(), Sdp.data(), mu_half.data(), g.size());
            break;
          }
        }
      }
    }
    part1[blk] = acc1;
    part2[blk] = acc2;
  });
  const double h6 = g.cell_volume() * g.cell_volume();
  out1 = combine_blocks(part1) * h6;
  out2 = combine_blocks(part2) * h6;
}

}  // namespace

double dirichlet_form(const VField& gf, const CollisionWorkspace& ws) {
  ws.check_direct_size();
  std::vector<double> gs = real_snapshot(gf);
  double a = 0, b = 0;
  direct_form(ws, gs, nullptr, FormKind::dirichlet, a, b);
  return 0.25 * a;
}

double l1_form(const VField& gf, const CollisionWorkspace& ws) {
  ws.check_direct_size();
  std::vector<double> gs = real_snapshot(gf);
  double a = 0, b = 0;
  direct_form(ws, gs, nullptr, FormKind::l1, a, b);
  return 0.5 * a;
}

void triple_norm_direct_terms(const VField& gf, const CollisionWorkspace& ws,
                              double& term_a, double& term_b) {
  ws.check_direct_size();
  std::vector<double> gs = real_snapshot(gf);
  std::vector<double> g2(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) g2[i] = gs[i] * gs[i];
  double a1 = 0, a2 = 0;
  direct_form(ws, gs, nullptr, FormKind::triple_a, a1, a2);
  term_a = a1;
  double b1 = 0, b2 = 0;
  direct_form(ws, gs, &g2, FormKind::triple_b, b1, b2);
  term_b = b2;
}

double squared_diff_form(const VField& ff, const VField& gf, const CollisionWorkspace& ws) {
  ws.check_direct_size();
  std::vector<double> gs = real_snapshot(gf);
  std::vector<double> fs = real_snapshot(ff);
  std::vector<double> f2(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) f2[i] = fs[i] * fs[i];
  double a = 0, b = 0;
  direct_form(ws, gs, &f2, FormKind::squared_diff, a, b);
  return a;
}

}  // namespace boltzlab
