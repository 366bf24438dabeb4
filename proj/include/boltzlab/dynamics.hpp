#pragma once
// Time integration of the near-equilibrium perturbation equation
//     g_t + v1 dx g + L g = Gamma(g, g)
// on a 1D periodic torus in x (a documented reduction of the spatial domain),
// with RK4 or the frozen-coefficient iteration scheme, macro-micro energy
// tracking, macroscopic-equation residuals, and the non-negativity monitor.

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "boltzlab/collision.hpp"
#include "boltzlab/grid.hpp"
#include "boltzlab/linearized.hpp"
#include "boltzlab/norms.hpp"

namespace boltzlab {

// stack of velocity fields over the spatial grid; values real, physical space
struct XVField {
  const VGrid* grid = nullptr;
  int nx = 0;
  double x_period = 2.0 * 3.14159265358979323846;
  std::vector<double> values;  // [ix][velocity flat]

  XVField() = default;
  XVField(const VGrid& g, int nx_, double period);

  double* fiber(int ix) { return values.data() + static_cast<std::size_t>(ix) * grid->size(); }
  const double* fiber(int ix) const {
    return values.data() + static_cast<std::size_t>(ix) * grid->size();
  }
  VField fiber_field(int ix) const;
  void set_fiber(int ix, const VField& f);
};

struct MacroFields {
  std::vector<double> a, c;
  std::array<std::vector<double>, 3> b;
};

struct TraceRow {
  double t = 0;
  double E = 0, D = 0;
  double mass = 0, mom[3] = {0, 0, 0}, energy = 0;
  double min_f = 0;
  double micro_norm = 0;
};

struct EnergyTrace {
  std::vector<TraceRow> rows;
  std::vector<double> picard_residuals;  // per outer iteration (picard mode)
};

// Shared per-run machinery: collision workspace, null-space basis,
// the Gamma(sqrt mu, sqrt mu) bias field, and the x-derivative matrix.
class DynamicsContext {
 public:
  DynamicsContext(const VGrid& g, const KernelParams& p, EvalMode mode, int nx,
                  double x_period, double ell);

  const VGrid& grid() const { return *grid_; }
  const CollisionWorkspace& workspace() const { return ws_; }
  const NullSpaceBasis& basis() const { return basis_; }
  int nx() const { return nx_; }
  double x_period() const { return period_; }
  double ell() const { return ell_; }

  // -v dx G - L G + Gamma(G, G), collision part moment-corrected so the
  // five collision invariants of f = mu + sqrt(mu) g are conserved discretely
  XVField rhs_perturbation(const XVField& G) const;

  // frozen-coefficient right side: -v dx h + Gamma(sqrt mu + gn, h) + Gamma(gn, sqrt mu)
  XVField rhs_linear(const XVField& h, const XVField& frozen) const;

  XVField step_rk4(const XVField& G, double dt) const;
  double cfl_dt_max() const;

  MacroFields macro_fields(const XVField& G) const;
  void energy_functionals(const XVField& G, double& E, double& D) const;
  double nonnegativity_min(const XVField& G) const;
  double micro_norm(const XVField& G) const;  // ||(I-P)g||_{L2(x,v)}
  Moments f_moments(const XVField& G) const;  // moments of f = mu + sqrt(mu) g

  // spectral x-derivative along the torus
  void ddx(const XVField& G, XVField& out) const;

  // collision right side for one fiber: -L g + Gamma(g, g) with equilibrium
  // bias removed and the conservation fix applied
  VField collision_rhs(const VField& g) const;

  // non-isotropic phase-space norm ||| W^ell d^alpha G |||^2 summed over
  // |alpha| <= m (x and v derivatives), integrated over x
  double phase_norm_B(const XVField& G, int m, double ell) const;

 private:
  const VGrid* grid_;
  CollisionWorkspace ws_;
  NullSpaceBasis basis_;
  int nx_;
  double period_;
  double ell_;
  VField sqrt_mu_;
  VField gamma_bias_;                 // Gamma(sqrt mu, sqrt mu), subtracted
  std::vector<double> dx_matrix_;     // nx x nx spectral differentiation
  std::vector<double> v1_;            // velocity component along x per flat index

  void conservation_fix(VField& coll) const;
};

struct RunConfigDynamics {
  int n = 12;
  double L = 8.0;
  KernelParams kernel;
  EvalMode mode = EvalMode::trilinear;
  int nx = 8;
  double x_period = 2.0 * 3.14159265358979323846;
  double dt = 0.0;  // 0 -> cfl_dt_max
  double T = 0.5;
  double amplitude = 1e-2;
  double ell = 0.0;
  std::string integrator = "rk4";  // or "picard"
  int picard_iters = 6;
  std::uint64_t seed = 1;
  bool homogeneous = false;
};

// full runs; initial data is a seeded smooth perturbation projected as
// configured. Throws on CFL violation or NaN.
EnergyTrace run_dynamics(const RunConfigDynamics& cfg, XVField* final_state = nullptr,
                         std::vector<XVField>* stored_states = nullptr,
                         std::vector<double>* stored_times = nullptr);

// the iteration scheme: outer frozen-coefficient solves; returns the last
// iterate and per-iteration sup-t residuals
XVField picard_iterate(const DynamicsContext& ctx, const XVField& g0, int steps, double dt,
                       int iters, std::vector<double>& residuals);

// plain RK4 integration of the full nonlinear equation
XVField integrate_rk4(const DynamicsContext& ctx, const XVField& g0, int steps, double dt);

// macroscopic-equation residuals (i)-(v) from three consecutive states;
// returns L2_x norms in order {i, ii, iii, iv, v}
std::array<double, 5> macro_residuals(const DynamicsContext& ctx, const XVField& prev,
                                      const XVField& cur, const XVField& next, double dt);

// deterministic initial perturbation used by the runs
XVField initial_perturbation(const DynamicsContext& ctx, double amplitude,
                             std::uint64_t seed);

}  // namespace boltzlab
