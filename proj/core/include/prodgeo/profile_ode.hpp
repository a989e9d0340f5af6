#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "prodgeo/umbilical_family.hpp"

namespace prodgeo {

// Working window for the classifying second-order equation
//   s ((s^2-p)^2 - q) f'' + (s^4 - p^2 + q) f' - s^3 f = 0,   p^2 > q,
// restricted to intervals where the quartic (s^2-p)^2 - q stays positive.
struct ODEParams {
  double p = 2.0;
  double q = 1.0;
  double s_lo = 0.0;
  double s_hi = 1.0;

  ODEParams(double p_, double q_, double lo, double hi);

  double W(double s) const {
    const double u = s * s - p;
    return u * u - q;
  }
  double beta(double s) const { return s / std::sqrt(W(s)); }
  double beta_d1(double s) const {
    const double w = std::sqrt(W(s));
    return 1.0 / w - 2.0 * s * s * (s * s - p) / (w * w * w);
  }
};

struct C2Scalar {
  std::function<double(double)> f, d1, d2;
};

// Left-hand side of the classifying equation evaluated on f at s.
double ode_residual(const ODEParams&, const C2Scalar&, double s);

// The exponential solution pair exp(F) and exp(-F), F' = beta. Available on
// the branches where the primitive has its logarithmic closed form.
struct SolutionBasis {
  C2Scalar rho_plus, rho_minus;
};
SolutionBasis closed_form_basis(const ODEParams&);

double wronskian(const SolutionBasis&, double s);

// Fixed-step fourth-order Runge-Kutta integration over [a, b] with the step
// refined until doubling the resolution moves the endpoint by < 1e-9.
struct IntegratedSolution {
  std::vector<double> s, f, df;
  double richardson_delta = 0.0;
  int steps = 0;
};
IntegratedSolution integrate_ode(const ODEParams&, double f0, double df0, double a, double b);

// Profile curve (a_0, a_1, a_2, a_3) reconstructed from the closed-form
// solutions: a_0(s) = s, the transverse pair from the solution basis rotated
// by theta, and the vertical component by quadrature anchored at a_3(0) = 0.
// sign=+1 realizes the branch whose vertical component decreases with beta
// (the Y-chart branch); sign=-1 the reflected one.
struct ReconstructedProfile {
  double p = 0.0, q = 0.0, theta = 0.0;
  int sign = 1;
  std::function<Eigen::VectorXd(double)> value, d1, d2;
};
ReconstructedProfile reconstruct_alpha(const FamilyParams&, double theta, int sign);

// Squared-speed function (p^2 - q) / ((s^2-p)^2 - q) and its derivative.
double varphi(double p, double q, double s);
double varphi_d1(double p, double q, double s);

// Arc length of the profile from 0 to t.
double arclength(const FamilyParams&, double t, double abs_tol = 1e-10);

// Max difference of the squared-speed functions over the common interval.
double warping_distance(const FamilyParams&, const FamilyParams&, int grid_points = 101);

// Residual of the master umbilicity identity
//   2 phi a0 a'' + 2 phi^2 e0 - (a0 phi' + 2 phi a0') a' - 2 phi a0 (a3')^2 abar = 0
// with phi = <a', a'> taken from the curve itself.
double umbilical_condition_residual(const ReconstructedProfile&, double s);

}  // namespace prodgeo
