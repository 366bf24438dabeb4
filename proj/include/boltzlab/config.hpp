#pragma once
// Run configuration: a single self-describing key = value file. Unknown keys
// are rejected; validation collects every violation rather than stopping at
// the first. See README for the schema.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "boltzlab/angular.hpp"
#include "boltzlab/offlattice.hpp"

namespace boltzlab {

struct RunConfig {
  // grid
  int grid_n = 16;
  double grid_L = 8.0;
  // kernel
  KernelParams kernel;
  // workspace
  EvalMode mode = EvalMode::windowed;
  int window_width = 8;
  // ensembles
  int ensemble_count = 50;
  std::uint64_t seed = 1;
  std::string ensemble_family = "gauss_hermite";
  double amplitude = 1.0;
  // dynamics
  int nx = 8;
  double x_period = 6.283185307179586;
  double dt = 0.0;  // 0 -> CFL maximum
  double T = 0.5;
  double dyn_amplitude = 1e-2;
  double ell = 0.0;
  std::string integrator = "rk4";
  int picard_iters = 6;
  // output
  std::string output_dir = "out";

  std::string canonical_text() const;  // deterministic echo of all keys
};

struct ConfigResult {
  RunConfig config;
  std::vector<std::string> errors;  // empty iff valid
  bool ok() const { return errors.empty(); }
};

ConfigResult parse_config_text(const std::string& text);
ConfigResult parse_config_file(const std::string& path);

}  // namespace boltzlab
