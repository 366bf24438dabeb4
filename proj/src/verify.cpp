#include "boltzlab/verify.hpp"

#include <algorithm>
#include <cmath>

#include "boltzlab/rng.hpp"

namespace boltzlab {

namespace {

void stamp_meta(IneqReport& r, const CollisionWorkspace& w) {
  r.n = w.grid->n();
  r.L = w.grid->half_width();
  r.s = w.params.s;
  r.K = w.params.K;
  r.theta_min = w.params.theta_min;
}

double finite_min(const std::vector<double>& v) {
  double m = 1e300;
  for (double x : v) m = std::min(m, x);
  return m;
}

double finite_max(const std::vector<double>& v) {
  double m = -1e300;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace

std::vector<VField> random_ensemble(const EnsembleSpec& spec, const VGrid& grid) {
  if (spec.count < 1) return {};
  Rng rng(spec.seed);
  std::vector<VField> out;
  out.reserve(spec.count);
  NullSpaceBasis basis(grid);
  const int n = grid.n();
  for (int m = 0; m < spec.count; ++m) {
    VField f(grid, Space::physical);
    if (spec.family == EnsembleFamily::band_limited) {
      // random low Fourier modes damped by mu^(1/4)
      VField hat(grid, Space::fourier);
      const int kmax = 2;
      for (int i = -kmax; i <= kmax; ++i)
        for (int j = -kmax; j <= kmax; ++j)
          for (int k = -kmax; k <= kmax; ++k) {
            int iw = (i + n) % n, jw = (j + n) % n, kw = (k + n) % n;
            hat.values[grid.flat(iw, jw, kw)] = cplx{rng.gaussian(), rng.gaussian()};
          }
      VField phys = to_physical(hat);
      for (std::size_t q = 0; q < f.size(); ++q) {
        int i, j, k;
        grid.coords(q, i, j, k);
        double r2 = grid.v1(i) * grid.v1(i) + grid.v1(j) * grid.v1(j) +
                    grid.v1(k) * grid.v1(k);
        f.values[q] = phys.values[q].real() * std::exp(-r2 / 8.0);
      }
    } else {
      // random Hermite-style polynomial times Gaussian
      double c[10];
      for (double& x : c) x = rng.gaussian();
      for (std::size_t q = 0; q < f.size(); ++q) {
        int i, j, k;
        grid.coords(q, i, j, k);
        double x = grid.v1(i), y = grid.v1(j), z = grid.v1(k);
        double p = c[0] + c[1] * x + c[2] * y + c[3] * z + c[4] * x * y + c[5] * y * z +
                   c[6] * (x * x - 1) + c[7] * (y * y - 1) + c[8] * (z * z - 1) +
                   c[9] * x * z;
        f.values[q] = p * std::exp(-(x * x + y * y + z * z) / 4.0);
      }
    }
    f = band_limit(f);
    if (spec.family == EnsembleFamily::micro_only) {
      VField pf = basis.project(f);
      for (std::size_t q = 0; q < f.size(); ++q) f.values[q] -= pf.values[q];
    }
    double nn = l2_norm(f);
    if (nn > 0)
      for (auto& v : f.values) v *= spec.amplitude / nn;
    out.push_back(std::move(f));
  }
  return out;
}

IneqReport check_coercivity(const std::vector<VField>& ens, const CollisionWorkspace& w) {
  IneqReport r;
  r.inequality_id = "coercivity_gain_of_moment";
  stamp_meta(r, w);
  for (const VField& g : ens) {
    double den = sobolev_norm(g, 0.0, w.params.s);
    den *= den;
    if (den < 1e-28) continue;  // degenerate member skipped per contract
    double num = dirichlet_form(g, w);
    r.ratios.push_back(num / den);
  }
  if (r.ratios.empty()) {
    r.note = "all members degenerate; skipped";
    return r;
  }
  r.empirical_constant = finite_min(r.ratios);
  for (double x : r.ratios)
    if (!(x > 0.0) || !std::isfinite(x)) r.violated = true;
  return r;
}

IneqReport check_coercivity_q(const std::vector<VField>& ens, const CollisionWorkspace& w) {
  // -(Q(mu, f), f) >= c ||f||_{Hs}^2 - C ||mu||_{L1} ||f||_{L2}^2, verified by
  // exhibiting a witness pair (c, C) with C escalated in powers of two
  IneqReport r;
  r.inequality_id = "coercivity_q_form";
  stamp_meta(r, w);
  VField mu = maxwellian(*w.grid);
  std::vector<double> ys, xs;
  for (const VField& f : ens) {
    double hs = sobolev_norm(f, w.params.s, 0.0);
    double l2 = l2_norm(f);
    if (hs < 1e-14) continue;
    VField qf = q_bobylev(mu, f, w);
    double num = -inner_product(qf, f);
    ys.push_back(num / (hs * hs));
    xs.push_back(l2 * l2 / (hs * hs));
  }
  double used_c = 1.0;
  bool ok = false;
  for (int esc = 0; esc < 12 && !ok; ++esc) {
    ok = true;
    double cmin = 1e300;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      double margin = ys[i] + used_c * xs[i];
      cmin = std::min(cmin, margin);
      if (!(margin > 0)) ok = false;
    }
    if (ok) {
      r.empirical_constant = cmin;
      r.note = "witness_C=" + std::to_string(used_c);
      r.ratios = ys;
    } else {
      used_c *= 2.0;
    }
  }
  r.violated = !ok;
  return r;
}

IneqReport check_equivalence(const std::vector<VField>& ens, const CollisionWorkspace& w) {
  IneqReport r;
  r.inequality_id = "dirichlet_triple_norm_equivalence";
  stamp_meta(r, w);
  for (const VField& g : ens) {
    NormBreakdown nb = triple_norm(g, w);
    double den = nb.total();
    if (den < 1e-28) continue;  // zero member skipped
    double num = dirichlet_form(g, w);
    r.ratios.push_back(num / den);
  }
  if (r.ratios.empty()) {
    r.note = "all members degenerate; skipped";
    return r;
  }
  r.empirical_constant = finite_min(r.ratios);
  r.note = "interval=[" + std::to_string(finite_min(r.ratios)) + "," +
           std::to_string(finite_max(r.ratios)) + "]";
  for (double x : r.ratios)
    if (!(x > 0.0) || !std::isfinite(x)) r.violated = true;
  return r;
}

std::vector<IneqReport> check_bounds(const std::vector<VField>& ens,
                                     const CollisionWorkspace& w) {
  IneqReport upper, lower, half;
  upper.inequality_id = "triple_norm_upper_bound";
  lower.inequality_id = "triple_norm_lower_bound";
  half.inequality_id = "l1_controls_half_l";
  stamp_meta(upper, w);
  stamp_meta(lower, w);
  stamp_meta(half, w);
  for (const VField& g : ens) {
    NormBreakdown nb = triple_norm(g, w);
    double tn = nb.total();
    double hss = sobolev_norm(g, w.params.s, w.params.s);
    double hs = sobolev_norm(g, w.params.s, 0.0);
    double l2s = sobolev_norm(g, 0.0, w.params.s);
    if (hss > 1e-14) upper.ratios.push_back(tn / (hss * hss));
    double den = hs * hs + l2s * l2s;
    if (den > 1e-28) lower.ratios.push_back(tn / den);
    double dl = dirichlet_form(g, w);
    double l1 = l1_form(g, w);
    half.ratios.push_back(l1 - 0.5 * dl);
  }
  upper.empirical_constant = upper.ratios.empty() ? 0 : finite_max(upper.ratios);
  lower.empirical_constant = lower.ratios.empty() ? 0 : finite_min(lower.ratios);
  half.empirical_constant = half.ratios.empty() ? 0 : finite_min(half.ratios);
  for (double x : upper.ratios)
    if (!std::isfinite(x)) upper.violated = true;
  for (double x : lower.ratios)
    if (!(x > 0) || !std::isfinite(x)) lower.violated = true;
  for (double x : half.ratios)
    if (x < -1e-8) half.violated = true;
  return {upper, lower, half};
}

IneqReport check_trilinear(const std::vector<VField>& ens, const CollisionWorkspace& w) {
  IneqReport r;
  r.inequality_id = "trilinear_gamma_bound";
  stamp_meta(r, w);
  // consume ensemble members in consecutive triples (f, g, h)
  for (std::size_t q = 0; q + 2 < ens.size(); q += 3) {
    const VField &f = ens[q], &g = ens[q + 1], &h = ens[q + 2];
    double fl2s = sobolev_norm(f, 0.0, w.params.s);
    double gl2s = sobolev_norm(g, 0.0, w.params.s);
    double ft = std::sqrt(std::max(0.0, triple_norm(f, w).total()));
    double gt = std::sqrt(std::max(0.0, triple_norm(g, w).total()));
    double ht = std::sqrt(std::max(0.0, triple_norm(h, w).total()));
    double den = (fl2s * gt + gl2s * ft) * ht;
    VField gam = gamma_bilinear(f, g, w);
    double num = std::abs(inner_product(gam, h));
    if (den < 1e-28) {
      if (num > 1e-10) r.violated = true;  // denominator vanished with mass left
      continue;
    }
    r.ratios.push_back(num / den);
  }
  r.empirical_constant = r.ratios.empty() ? 0 : finite_max(r.ratios);
  for (double x : r.ratios)
    if (!std::isfinite(x)) r.violated = true;
  return r;
}

IneqReport check_squared_diff(const std::vector<VField>& ens, const CollisionWorkspace& w) {
  IneqReport r;
  r.inequality_id = "squared_difference_bound";
  stamp_meta(r, w);
  for (std::size_t q = 0; q + 1 < ens.size(); q += 2) {
    const VField &f = ens[q], &g = ens[q + 1];
    double fl2s = sobolev_norm(f, 0.0, w.params.s);
    double gt = triple_norm(g, w).total();
    double den = fl2s * fl2s * gt;
    double num = squared_diff_form(f, g, w);
    if (den < 1e-28) continue;
    r.ratios.push_back(num / den);
  }
  r.empirical_constant = r.ratios.empty() ? 0 : finite_max(r.ratios);
  for (double x : r.ratios)
    if (!std::isfinite(x) || x < 0) r.violated = true;
  return r;
}

IneqReport check_cancellation(const std::vector<VField>& ens, const CollisionWorkspace& w) {
  IneqReport r;
  r.inequality_id = "cancellation_lemma";
  stamp_meta(r, w);
  VField probe = maxwellian(*w.grid);
  double lam = cancellation_constant(w.params);
  Moments pm = moments(probe);
  for (const VField& f : ens) {
    Moments fm = moments(f);
    double ref = lam * fm.mass * pm.mass;
    double got = cancellation_apply(f, w, probe);
    if (std::abs(ref) < 1e-20) {
      r.ratios.push_back(std::abs(got));
      continue;
    }
    r.ratios.push_back(std::abs(got - ref) / std::abs(ref));
  }
  r.empirical_constant = r.ratios.empty() ? 0 : finite_max(r.ratios);
  for (double x : r.ratios)
    if (!std::isfinite(x)) r.violated = true;
  return r;
}

IneqReport check_spectral_gap_integral(const KernelParams& p, double xi_max) {
  IneqReport r;
  r.inequality_id = "spectral_gap_integral";
  r.s = p.s;
  r.K = p.K;
  r.theta_min = p.theta_min;
  ThetaRule tr = theta_rule(p);
  const double twopi = 2.0 * 3.14159265358979323846;
  for (double xi = 1.0; xi <= xi_max + 1e-12; xi += 0.25) {
    double acc = 0;
    for (std::size_t i = 0; i < tr.theta.size(); ++i) {
      double th = tr.theta[i];
      double ximinus = xi * std::sin(th / 2);
      double integrand = 1.0 - std::exp(-ximinus * ximinus / 2.0);
      acc += tr.weight[i] * kernel_b(th, p) * integrand * std::sin(th);
    }
    double val = twopi * acc / std::pow(xi, 2 * p.s);
    r.ratios.push_back(val);
  }
  r.empirical_constant = finite_min(r.ratios);
  r.violated = !(r.empirical_constant > 0);
  return r;
}

std::vector<IneqReport> run_all_checks(const VGrid& grid, const KernelParams& p,
                                       EvalMode mode, const EnsembleSpec& base) {
  CollisionWorkspace ws(grid, p, mode);
  ws.allow_large_direct = true;

  EnsembleSpec micro = base;
  micro.family = EnsembleFamily::micro_only;
  EnsembleSpec mixed = base;
  mixed.family = EnsembleFamily::gauss_hermite;
  mixed.seed = base.seed + 1;

  std::vector<VField> ens_micro = random_ensemble(micro, grid);
  std::vector<VField> ens_mixed = random_ensemble(mixed, grid);

  std::vector<IneqReport> out;
  out.push_back(check_coercivity(ens_micro, ws));
  out.push_back(check_coercivity_q(ens_mixed, ws));
  out.push_back(check_equivalence(ens_micro, ws));
  for (IneqReport& r : check_bounds(ens_mixed, ws)) out.push_back(std::move(r));
  out.push_back(check_trilinear(ens_mixed, ws));
  out.push_back(check_squared_diff(ens_mixed, ws));
  out.push_back(check_cancellation(ens_mixed, ws));
  out.push_back(check_spectral_gap_integral(p));
  return out;
}

}  // namespace boltzlab
