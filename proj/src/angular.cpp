#include "boltzlab/angular.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boltzlab {

namespace {
constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = 0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
      }
      pp = n * (t * p0 - p1) / (t * t - 1);
      double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[n - 1 - i] = t;
    w[n - 1 - i] = 2.0 / ((1 - t * t) * pp * pp);
  }
}

}  // namespace

void KernelParams::validate() const {
  if (!(s > 0.0 && s < 0.5))
    throw std::invalid_argument("kernel: s must satisfy 0 < s < 1/2");
  if (!(K > 0.0)) throw std::invalid_argument("kernel: K must be positive");
  if (!(theta_min > 0.0 && theta_min < kPi / 2))
    throw std::invalid_argument("kernel: theta_min must be in (0, pi/2)");
  if (n_theta < 4 || n_phi < 4)
    throw std::invalid_argument("kernel: n_theta and n_phi must be >= 4");
}

double kernel_b(double theta, const KernelParams& p) {
  if (!(theta > 0.0) || theta > kPi / 2 + 1e-14)
    throw std::invalid_argument("kernel_b: theta outside (0, pi/2]");
  return p.K * std::pow(theta, -2.0 - 2.0 * p.s);
}

std::array<double, 2> inverse_power_map(double r) {
  if (!(r > 2.0)) throw std::invalid_argument("inverse_power_map: requires r > 2");
  return {1.0 - 4.0 / r, 1.0 / r};
}

ThetaRule theta_rule(const KernelParams& p) {
  p.validate();
  // geometric panel edges, ratio 2, refined toward theta_min
  std::vector<double> edges{kPi / 2};
  while (edges.back() / 2 > p.theta_min) edges.push_back(edges.back() / 2);
  edges.push_back(p.theta_min);
  const int panels = static_cast<int>(edges.size()) - 1;
  int per_panel = (p.n_theta + panels - 1) / panels;
  if (per_panel < 2) per_panel = 2;
  std::vector<double> xg, wg;
  gauss_legendre(per_panel, xg, wg);
  ThetaRule rule;
  for (int pn = panels - 1; pn >= 0; --pn) {  // ascending theta
    double a = edges[pn + 1], b = edges[pn];
    for (int i = 0; i < per_panel; ++i) {
      rule.theta.push_back(0.5 * (b - a) * xg[i] + 0.5 * (a + b));
      rule.weight.push_back(0.5 * (b - a) * wg[i]);
    }
  }
  return rule;
}

void orthonormal_frame(const std::array<double, 3>& a, std::array<double, 3>& e1,
                       std::array<double, 3>& e2) {
  // cross with the axis of smallest |component| for stability
  int imin = 0;
  if (std::abs(a[1]) < std::abs(a[imin])) imin = 1;
  if (std::abs(a[2]) < std::abs(a[imin])) imin = 2;
  std::array<double, 3> e{0, 0, 0};
  e[imin] = 1.0;
  e1 = {a[1] * e[2] - a[2] * e[1], a[2] * e[0] - a[0] * e[2], a[0] * e[1] - a[1] * e[0]};
  double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (auto& c : e1) c /= n1;
  e2 = {a[1] * e1[2] - a[2] * e1[1], a[2] * e1[0] - a[0] * e1[2], a[0] * e1[1] - a[1] * e1[0]};
}

SphereRule sphere_rule(const std::array<double, 3>& axis, const KernelParams& p) {
  double an = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(an - 1.0) > 1e-12)
    throw std::invalid_argument("sphere_rule: axis must be a unit vector");
  ThetaRule tr = theta_rule(p);
  std::array<double, 3> e1, e2;
  orthonormal_frame(axis, e1, e2);
  SphereRule rule;
  const double dphi = 2.0 * kPi / p.n_phi;
  rule.nodes.reserve(tr.theta.size() * p.n_phi);
  for (std::size_t it = 0; it < tr.theta.size(); ++it) {
    double ct = std::cos(tr.theta[it]), st = std::sin(tr.theta[it]);
    double w = tr.weight[it] * st * dphi;
    for (int ip = 0; ip < p.n_phi; ++ip) {
      double phi = dphi * ip;
      double cp = std::cos(phi), sp = std::sin(phi);
      rule.nodes.push_back({ct * axis[0] + st * (cp * e1[0] + sp * e2[0]),
                            ct * axis[1] + st * (cp * e1[1] + sp * e2[1]),
                            ct * axis[2] + st * (cp * e1[2] + sp * e2[2])});
      rule.weights.push_back(w);
      rule.theta_of_node.push_back(tr.theta[it]);
    }
  }
  return rule;
}

double cancellation_constant(const KernelParams& p) {
  ThetaRule tr = theta_rule(p);
  double acc = 0;
  for (std::size_t i = 0; i < tr.theta.size(); ++i) {
    double th = tr.theta[i];
    double c = std::cos(th / 2);
    acc += tr.weight[i] * kernel_b(th, p) * (1.0 / (c * c * c) - 1.0) * std::sin(th);
  }
  return 2.0 * kPi * acc;
}

double cap_b_integral(const KernelParams& p) {
  ThetaRule tr = theta_rule(p);
  double acc = 0;
  for (std::size_t i = 0; i < tr.theta.size(); ++i)
    acc += tr.weight[i] * kernel_b(tr.theta[i], p) * std::sin(tr.theta[i]);
  return 2.0 * kPi * acc;
}

}  // namespace boltzlab
