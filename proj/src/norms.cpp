#include "boltzlab/norms.hpp"

#include <cmath>
#include <numbers>

#include "boltzlab/parallel.hpp"

namespace boltzlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mu_hat(double p2) { return std::exp(-p2 / 2.0); }  // mass-normalized

// transform of mu^(1/2): (2 pi)^{-3/4} (4 pi)^{3/2} e^{-|p|^2}
const double kMuHalfHat0 = std::pow(kTwoPi, -0.75) * std::pow(4.0 * std::numbers::pi, 1.5);
double mu_half_hat(double p2) { return kMuHalfHat0 * std::exp(-p2); }

}  // namespace

NormBreakdown triple_norm(const VField& gfield, const CollisionWorkspace& ws) {
  const VGrid& g = *ws.grid;
  VField bl = band_limit(gfield);
  for (auto& v : bl.values) v = v.real();
  VField g2(g, Space::physical);
  for (std::size_t i = 0; i < g2.size(); ++i)
    g2.values[i] = bl.values[i].real() * bl.values[i].real();

  SpectrumEvaluator ge(bl, ws.interpolation_mode, ws.window_width);
  SpectrumEvaluator g2e(g2, ws.interpolation_mode, ws.window_width);
  VField ghat = to_fourier(bl);
  const double scale = paper_hat_scale();
  const double g2zero = g2e.zero_mode().real();  // ||g||_{L2}^2

  const ThetaRule& tr = ws.rule;
  const int nphi = ws.params.n_phi;
  const double dphi = kTwoPi / nphi;

  const std::size_t nb = block_count_for(g.size());
  std::vector<double> part_a(nb, 0.0), part_b(nb, 0.0);
  parallel_blocks(g.size(), [&](std::size_t blk, std::size_t lo, std::size_t hi) {
    double acc_a = 0, acc_b = 0;
    for (std::size_t m = lo; m < hi; ++m) {
      if (g.on_nyquist(m)) continue;
      int i, j, k;
      g.coords(m, i, j, k);
      double xi[3] = {g.xi1(i), g.xi1(j), g.xi1(k)};
      double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
      double r = std::sqrt(r2);
      if (r == 0.0) continue;
      std::array<double, 3> axis = {xi[0] / r, xi[1] / r, xi[2] / r};
      std::array<double, 3> e1, e2;
      orthonormal_frame(axis, e1, e2);
      const cplx gxi = ghat.values[m] * scale;
      const double gxi2 = std::norm(gxi);
      const double mh_xi = mu_half_hat(r2);
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
          double p2 = xp[0] * xp[0] + xp[1] * xp[1] + xp[2] * xp[2];
          double m2 = xm[0] * xm[0] + xm[1] * xm[1] + xm[2] * xm[2];
          cplx gp = ge.eval(xp);
          // A: mu^(0)|g^(xi)|^2 + mu^(0)|g^(xi+)|^2 - 2 Re mu^(xi-) g^(xi+) conj(g^(xi))
          acc_a += wt * (gxi2 + std::norm(gp) -
                         2.0 * mu_hat(m2) * (gp * std::conj(gxi)).real());
          // B: g2^(0)|mh(xi)|^2 + g2^(0)|mh(xi+)|^2 - 2 Re g2^(xi-) mh(xi+) mh(xi)
          double mh_p = mu_half_hat(p2);
          cplx g2m = g2e.eval(xm);
          acc_b += wt * (g2zero * (mh_xi * mh_xi + mh_p * mh_p) -
                         2.0 * mh_p * mh_xi * g2m.real());
        }
      }
    }
    part_a[blk] = acc_a;
    part_b[blk] = acc_b;
  });

  const double meas = g.xi_cell_volume() / std::pow(kTwoPi, 3);
  NormBreakdown out;
  out.term_a = combine_blocks(part_a) * meas;
  out.term_b = combine_blocks(part_b) * meas;
  return out;
}

NormBreakdown triple_norm_direct(const VField& gfield, const CollisionWorkspace& ws) {
  NormBreakdown out;
  triple_norm_direct_terms(gfield, ws, out.term_a, out.term_b);
  return out;
}

}  // namespace boltzlab
