#pragma once
// Ensemble-based empirical verification of the functional inequalities:
// coercivity, norm equivalence and bounds, the trilinear estimate, the
// squared-difference bound, the cancellation identity and the spectral-gap
// integral. Each check produces an IneqReport with per-member ratios, the
// extremal empirical constant, grid metadata and a violation flag.

#include <cstdint>
#include <string>
#include <vector>

#include "boltzlab/collision.hpp"
#include "boltzlab/grid.hpp"
#include "boltzlab/linearized.hpp"
#include "boltzlab/norms.hpp"

namespace boltzlab {

enum class EnsembleFamily { gauss_hermite, band_limited, micro_only };

struct EnsembleSpec {
  int count = 50;
  std::uint64_t seed = 1;
  EnsembleFamily family = EnsembleFamily::gauss_hermite;
  double amplitude = 1.0;
};

struct IneqReport {
  std::string inequality_id;
  std::vector<double> ratios;
  double empirical_constant = 0;
  bool violated = false;
  std::string note;
  // grid metadata
  int n = 0;
  double L = 0;
  double s = 0, K = 0, theta_min = 0;
};

std::vector<VField> random_ensemble(const EnsembleSpec& spec, const VGrid& grid);

IneqReport check_coercivity(const std::vector<VField>& ens, const CollisionWorkspace& w);
IneqReport check_coercivity_q(const std::vector<VField>& ens, const CollisionWorkspace& w);
IneqReport check_equivalence(const std::vector<VField>& ens, const CollisionWorkspace& w);
// upper (2.2.2-type), lower (2.2.13-type) and the half-L1 margin, three reports
std::vector<IneqReport> check_bounds(const std::vector<VField>& ens,
                                     const CollisionWorkspace& w);
IneqReport check_trilinear(const std::vector<VField>& ens, const CollisionWorkspace& w);
IneqReport check_squared_diff(const std::vector<VField>& ens, const CollisionWorkspace& w);
IneqReport check_cancellation(const std::vector<VField>& ens, const CollisionWorkspace& w);
IneqReport check_spectral_gap_integral(const KernelParams& p, double xi_max = 12.0);

// all checks with spec-documented ensemble assignments; used by the verify
// subcommand
std::vector<IneqReport> run_all_checks(const VGrid& grid, const KernelParams& p,
                                       EvalMode mode, const EnsembleSpec& base_spec);

}  // namespace boltzlab
