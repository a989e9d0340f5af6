#pragma once

#include <utility>

#include "prodgeo/chart.hpp"

namespace prodgeo {

// Parameters of the two-parameter family of umbilical charts of the sphere
// product. Admissible pairs satisfy (p-1)^2 <= q < p^2; the derived (r, h)
// are the radius and height of the conformal sphere image.
struct FamilyParams {
  double p = 2.0;
  double q = 1.0;
  int m = 2;

  FamilyParams(double p_, double q_, int m_ = 2);

  static bool admissible(double p, double q);

  double r() const;
  double h() const;
  // Half-width sqrt(p - sqrt(q)) of the profile interval.
  double half_width() const;
};

// (p, q) -> (r, h) and its algebraic inverse.
std::pair<double, double> psi(double p, double q);
std::pair<double, double> psi_inv(double r, double h);

// Conformal map (x, t) -> e^t x between the sphere product and punctured
// flat space, with its inverse.
Eigen::VectorXd conformal_phi(const Eigen::VectorXd& x, double t);
std::pair<Eigen::VectorXd, double> conformal_phi_inv(const Eigen::VectorXd& y);
// Convenience composition acting on an ambient chart point (sphere block
// plus line coordinate).
Eigen::VectorXd conformal_phi_point(const Eigen::VectorXd& chart_point);

// Profile height function and its derivatives on the closure of the interval.
double h_pq(const FamilyParams&, double s);
double h_pq_d1(const FamilyParams&, double s);
double h_pq_d2(const FamilyParams&, double s);

// The two chart branches covering the family member.
Chart Y_chart(const FamilyParams&);
Chart Z_chart(const FamilyParams&);  // requires q != 0

// The isometry with Z = Psi o Y: an orthogonal involution of the sphere
// block composed with a reflected vertical translation.
struct FamilyInvolution {
  Eigen::MatrixXd A;  // (m+2) x (m+2), A*A = Id
  double shift = 0.0;
  Eigen::VectorXd apply(const Eigen::VectorXd& chart_point) const;
};
FamilyInvolution family_involution(const FamilyParams&);  // requires q != 0

// Maps chart grids through the conformal map and measures membership in the
// affine sphere of radius r centered at height h on the axis.
struct SphereImageErrors {
  double max_radius_err = 0.0;
  double max_height_err = 0.0;
};
SphereImageErrors sphere_image_check(const FamilyParams&, int points_per_axis = 9);

// Distance from deterministic samples of the full target sphere to the union
// of the two conformal chart images (analytic preimages, exact up to
// round-off when the union covers the sphere).
double union_coverage_distance(const FamilyParams&, int samples_per_axis = 16);

}  // namespace prodgeo
