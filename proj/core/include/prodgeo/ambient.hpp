#pragma once

#include <Eigen/Core>

#include "prodgeo/errors.hpp"

namespace prodgeo {

// The flat space E^{n+2} hosting the product of a curved factor Q^n (round
// sphere for epsilon = +1, hyperbolic sheet for epsilon = -1) with a line.
// Metric is diag(epsilon, 1, ..., 1); coordinate n+1 spans the line factor,
// coordinates 0..n host the quadric  epsilon*x0^2 + x1^2 + ... + xn^2 = epsilon
// (with x0 > 0 on the hyperbolic sheet).
struct AmbientSpace {
  int epsilon = 1;
  int n = 2;

  int total_dim() const { return n + 2; }

  double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    double s = epsilon * a[0] * b[0];
    for (Eigen::Index i = 1; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  double norm2(const Eigen::VectorXd& a) const { return inner(a, a); }

  // Unit vector along the line factor.
  Eigen::VectorXd vertical() const {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(total_dim());
    e[n + 1] = 1.0;
    return e;
  }

  // Projection dropping the line coordinate. At a point of the product this
  // is the unit normal of the inclusion into flat space.
  Eigen::VectorXd horizontal(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = x;
    y[n + 1] = 0.0;
    return y;
  }

  // |<x_hat, x_hat> - epsilon| where x_hat drops the line coordinate.
  double surface_residual(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd h = horizontal(x);
    return std::abs(inner(h, h) - double(epsilon));
  }

  bool on_surface(const Eigen::VectorXd& x, double tol) const {
    if (surface_residual(x) > tol) return false;
    if (epsilon == -1 && x[0] <= 0.0) return false;
    return true;
  }
};

}  // namespace prodgeo
