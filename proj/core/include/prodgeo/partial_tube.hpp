#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "prodgeo/chart.hpp"
#include "prodgeo/geometry.hpp"

namespace prodgeo {

// Structure of the fiber frame spanned by the base position, the normal
// sections and the vertical direction. `round` is the orthonormal case with
// <xi_0, xi_0> = epsilon; `lightcone` is the degenerate-axis case where the
// base position and the last section are null with unit pairing.
enum class FiberKind { round, lightcone };

// Profile curve in the fiber space E^{k+2}, components (a_0, ..., a_k, a_{k+1})
// with the quadric constraint of its fiber kind.
struct CurveAlpha {
  int k = 0;
  int epsilon = 1;
  FiberKind fiber = FiberKind::round;
  std::function<Eigen::VectorXd(double)> value, d1, d2;
  double s_lo = -1.0, s_hi = 1.0;
  bool require_vertical_regular = false;  // demand a'_{k+1} != 0 on the interval

  // Signature of E^{k+2} induced by the fiber frame.
  double fiber_inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
  // Max quadric-constraint violation over equally spaced samples.
  double constraint_residual(int samples = 50) const;
};

// Base immersion into the curved factor together with parallel normal
// sections along it. The base Chart has its line coordinate identically zero.
struct ParallelFrame {
  Chart base;
  std::vector<std::function<Eigen::VectorXd(const Eigen::VectorXd&)>> sections;
  FiberKind fiber = FiberKind::round;

  int k() const { return int(sections.size()); }
};

struct PartialTubeSpec {
  ParallelFrame frame;
  CurveAlpha curve;
};

struct FrameValidation {
  double orthonormality = 0.0;  // worst deviation from the fiber Gram pattern
  double parallelism = 0.0;     // worst section derivative escaping span{tangents, position}
};
FrameValidation validate_frame(const ParallelFrame&, int samples_per_axis = 5,
                               const FdConfig& = {});

// Chart evaluating  sum_i a_i(s) xi~_i(x)  over (x, s). Validates the curve
// constraint, frame orthonormality and parallelism first.
Chart build_tube(const PartialTubeSpec&, const FdConfig& = {});

// Same chart without the validation pass.
Chart tube_chart_unchecked(const PartialTubeSpec&);

struct Regularity {
  bool regular = false;
  double det = 0.0;
};
// Invertibility of P_s(x) = a_0(s) I - sum_i a_i(s) A_{xi_i}(x).
Regularity regularity(const PartialTubeSpec&, const Eigen::VectorXd& x, double s,
                      const FdConfig& = {});

// Curve subintervals on which det P_s(x) keeps its sign, split at located
// roots with the given margin on each side.
std::vector<std::pair<double, double>> regular_intervals(const PartialTubeSpec&,
                                                         const Eigen::VectorXd& x,
                                                         double margin = 1e-2,
                                                         const FdConfig& = {});

// Closed-form shape operator of the tube at (x, s) in the direction xi
// (an ambient vector normal to the tube there), expressed in the chart's
// (base coordinates, s) basis: horizontal block P_s^{-1} A_xi, fiber
// eigenvalue <a'', zeta>/<a', a'>, zero off-diagonal blocks.
Eigen::MatrixXd tube_shape_closed_form(const PartialTubeSpec&, const Eigen::VectorXd& x, double s,
                                       const Eigen::VectorXd& xi, const FdConfig& = {});

struct TubeTField {
  double t_coeff = 0.0;  // a'_{k+1}(s) / <a'(s), a'(s)>
  // Deviation against the numerically computed T; empty where the chart
  // parametrization collapses and no frame exists.
  std::optional<double> frame_deviation;
};
TubeTField tube_T_field(const PartialTubeSpec&, const Eigen::VectorXd& x, double s,
                        const FdConfig& = {});

}  // namespace prodgeo
