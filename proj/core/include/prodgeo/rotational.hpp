#pragma once

#include <functional>

#include "prodgeo/chart.hpp"
#include "prodgeo/partial_tube.hpp"

namespace prodgeo {

// Type of the rotation axis: the sphere case, and for the hyperbolic ambient
// the three signatures the fixed subspace can have.
enum class RotationalKind { spherical_e1, spherical_em1, hyperbolic, parabolic };

// Profile curve with components (a_0, ..., a_{n-m+1}, h).
struct ProfileCurve {
  std::function<Eigen::VectorXd(double)> value, d1, d2;
  double s_lo = -1.0, s_hi = 1.0;
};

// Parametrization of the orbit factor (sphere, hyperbolic sheet or flat
// space) together with its parameter box.
struct FactorParam {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> map;
  Box domain;
};

// Iterated polar angles on the unit sphere S^{d} in R^{d+1}, with margins
// away from the coordinate poles.
FactorParam sphere_factor(int d, double margin = 1e-2);
// Hyperboloid coordinates on H^{d} in L^{d+1}.
FactorParam hyperbolic_factor(int d, double margin = 1e-2);
// Identity box on R^{d}.
FactorParam flat_factor(int d);

struct RotationalSpec {
  int epsilon = 1;
  int n = 3;
  int m = 2;
  RotationalKind kind = RotationalKind::spherical_e1;
  ProfileCurve profile;
  FactorParam factor;  // defaulted from the kind when map is empty
};

// Maximum quadric-constraint violation of the profile for its kind.
double profile_constraint_residual(const RotationalSpec&, int samples = 50);

// The orbit chart over (factor parameters, s).
Chart rotational_chart(const RotationalSpec&);

// The same submanifold presented as a partial tube: totally geodesic or
// umbilical base with a constant-speed parallel frame, curve read off the
// display. The hyperbolic kind is only available on request; the parabolic
// kind returns a light-cone (degenerate-frame) tube spec.
PartialTubeSpec rotational_as_tube(const RotationalSpec&, bool allow_hyperbolic = false,
                                   double spherical_base_radius = 1.0);

// Deviation of a curve chart from the geodesic-circle identity
// g''' = -<g'', g''> g' after unit-speed normalization.
double geodesic_circle_residual(const Chart& base_curve, double t, const FdConfig& = {});

}  // namespace prodgeo
