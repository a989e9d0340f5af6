#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "prodgeo/ambient.hpp"

namespace prodgeo {

// Finite-difference step policy. Steps scale as step*(1+|u_i|) per axis.
// First derivatives of the chart map run at the finest step; derivatives of
// computed fields (frames, component functions) and higher-order stencils use
// coarser steps so that amplified round-off stays below the tolerances the
// consuming residual advertises.
struct FdConfig {
  double first_step = 1e-5;      // chart first derivatives
  double second_step = 3e-5;     // chart second derivatives, frame-field first derivatives
  double third_step = 2e-3;      // chart third derivatives, frame-field second derivatives
  double curvature_step = 1e-2;  // normal-curvature-derivative sweeps (reduction checks)
  double surface_guard = 1e-10;  // off-surface rejection threshold

  double step(double base, double coord) const { return base * (1.0 + std::abs(coord)); }
};

struct Tolerances {
  double surface = 1e-10;
  double frame = 1e-7;
  double sff = 1e-5;
  double compat = 1e-3;
  double rank = 1e-6;  // relative singular-value threshold
};

// Orthonormal set in the epsilon-inner product; signs[i] = <w_i, w_i>.
struct PseudoFrame {
  Eigen::MatrixXd vectors;  // columns
  std::vector<int> signs;
};

// Gram-Schmidt in the epsilon-inner product over the given seed columns.
// Throws SingularMetric when a seed degenerates (projection norm under
// skip_tol) or turns null.
PseudoFrame pseudo_orthonormalize(const AmbientSpace& amb, const Eigen::MatrixXd& seeds,
                                  double skip_tol = 1e-8);

// Completes `have` to a full pseudo-orthonormal frame by scanning the
// standard basis e_0..e_{n+1} in index order, skipping candidates whose
// projection norm is below skip_tol. Returns the `want` appended columns.
Eigen::MatrixXd complete_frame(const AmbientSpace& amb, PseudoFrame& have, int want,
                               double skip_tol = 1e-8);

// Recursive adaptive Simpson quadrature with an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10);

}  // namespace prodgeo
