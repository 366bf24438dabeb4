#pragma once
// Off-lattice evaluation of mass-normalized spectra: given a real physical
// field g on the velocity grid, evaluate
//     ghat(p) = h^3 sum_j g(v_j) e^{-i v_j . p}
// at arbitrary frequencies p (2 pi / h periodic by construction).
//
// Three evaluation modes:
//   trilinear  - trilinear interpolation on the coarse frequency lattice.
//                Cheap, but its O(dxi^2) error is amplified by the grazing
//                quadrature and does not shrink under n-refinement at fixed L;
//                kept for error-budget measurements.
//   windowed   - Kaiser-Bessel window interpolation on a x2-refined lattice
//                (type-2 nonuniform-transform evaluation). Default; error
//                ~1e-8 at width 8.
//   exact      - semi-discrete sum, O(n^3) per point; oracle-grade.

#include <complex>
#include <vector>

#include "boltzlab/grid.hpp"

namespace boltzlab {

enum class EvalMode { trilinear, windowed, exact };

class SpectrumEvaluator {
 public:
  SpectrumEvaluator(const VField& phys_real, EvalMode mode, int window_width = 8);

  // hat value at frequency p (mass-normalized convention)
  cplx eval(const double p[3]) const;

  // mass-normalized hat at the zero frequency (exact quadrature mass)
  cplx zero_mode() const { return zero_mode_; }

  EvalMode mode() const { return mode_; }

 private:
  const VGrid* grid_;
  EvalMode mode_;
  int width_ = 8;
  cplx zero_mode_;

  // trilinear: coarse lattice paper-hat (FFT index order), Nyquist zeroed
  std::vector<cplx> coarse_;

  // windowed: fine-lattice window-corrected values, per-axis deconvolution
  int nfine_ = 0;
  double beta_ = 0;
  double halfwidth_x_ = 0;  // window half-support in x = h*p units
  std::vector<cplx> fine_;

  // exact: real samples
  std::vector<double> samples_;

  cplx eval_trilinear(const double p[3]) const;
  cplx eval_windowed(const double p[3]) const;
  cplx eval_exact(const double p[3]) const;
};

}  // namespace boltzlab
