#pragma once
// The singular angular kernel b(cos theta) = K theta^(-2-2s) on (0, pi/2] and
// quadrature over the unit sphere graded toward the grazing end theta -> 0:
// Gauss-Legendre nodes on geometric panels accumulating at theta_min, uniform
// azimuth.

#include <array>
#include <vector>

namespace boltzlab {

struct KernelParams {
  double s = 0.25;          // singularity order, 0 < s < 1/2
  double K = 1.0;           // kernel amplitude
  double theta_min = 1e-3;  // grazing cutoff
  int n_theta = 55;         // total graded polar nodes (rounded to panels)
  int n_phi = 16;           // uniform azimuthal nodes

  void validate() const;  // throws std::invalid_argument
};

// b(cos theta) for theta in (0, pi/2]
double kernel_b(double theta, const KernelParams& p);

// inverse power-law potential r^{-r}: (gamma, s) = (1 - 4/r, 1/r); r > 2
std::array<double, 2> inverse_power_map(double r);

// Graded polar rule on [theta_min, pi/2]: geometric panels (ratio 2) toward
// theta_min with Gauss-Legendre nodes per panel. Weights are plain GL weights
// (no sin factor).
struct ThetaRule {
  std::vector<double> theta;
  std::vector<double> weight;
};
ThetaRule theta_rule(const KernelParams& p);

struct SphereRule {
  std::vector<std::array<double, 3>> nodes;  // unit vectors sigma
  std::vector<double> weights;               // include sin(theta) and dphi
  std::vector<double> theta_of_node;
};

// Product rule about a unit axis; sum of weights = cap area 2 pi cos(theta_min).
SphereRule sphere_rule(const std::array<double, 3>& axis, const KernelParams& p);

// Deterministic orthonormal completion (e1, e2) of a unit axis.
void orthonormal_frame(const std::array<double, 3>& axis, std::array<double, 3>& e1,
                       std::array<double, 3>& e2);

// lambda_b = 2 pi int b(cos theta) (cos^{-3}(theta/2) - 1) sin theta dtheta
// over [theta_min, pi/2]; the Maxwellian-molecule cancellation constant.
double cancellation_constant(const KernelParams& p);

// cap integral 2 pi int b sin theta dtheta (loss-term weight)
double cap_b_integral(const KernelParams& p);

}  // namespace boltzlab
