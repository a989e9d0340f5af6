#pragma once

#include <string>
#include <vector>

#include "prodgeo/chart.hpp"
#include "prodgeo/partial_tube.hpp"
#include "prodgeo/rotational.hpp"

namespace prodgeo {

// Built-in charts used by the command-line driver and the test corpus.

// Small sphere of radius sin(rho) in a slice of the 3-sphere product.
Chart slice_sphere_chart(double rho = 0.8);
// Totally geodesic great sphere in a slice (m = 2, n = 3).
Chart great_sphere_chart();
// Totally geodesic codimension-one product inside the 3-sphere product (m = 3).
Chart product_hypersurface_chart();
// Vertical cylinder over the equator of the 3-sphere (eta = 0 everywhere).
Chart vertical_cylinder_chart();
// Vertical cylinder over a latitude circle of the 2-sphere (non-umbilical).
Chart latitude_cylinder_chart(double rho = 1.0);
// Graph over the 2-sphere with a vertical shear: not in class A.
Chart tilted_graph_chart();
// Radial bump of relative size `amplitude`: leaves the product quadric.
Chart perturbed_chart(const Chart& base, double amplitude = 1e-2);

// Partial-tube fixtures keyed by name:
//   cylinder_k0      k=0 over the 2-sphere equator (vertical cylinder)
//   s3_k1            k=1 over a circle in the 3-sphere, curving profile
//   s3_geodesic_k1   k=1 over a circle, geodesic profile (parallel eta)
//   s3_k2            k=2 over a circle in the 3-sphere
//   h3_k1            k=1 over a geodesic of hyperbolic 3-space
//   h3_k2            k=2 over a geodesic of hyperbolic 3-space
//   veronese_k1      k=1 over the Veronese surface (curved normal bundle)
PartialTubeSpec tube_fixture(const std::string& name);
std::vector<std::string> tube_fixture_names();

// Rotational fixtures keyed by name:
//   spherical_e1, spherical_em1, hyperbolic, parabolic   generic profiles
//   slice_sphere_polar     totally geodesic slice sphere in polar form
//   latitude_cylinder      constant-latitude profile (vertical cylinder)
RotationalSpec rotational_fixture(const std::string& name);
std::vector<std::string> rotational_fixture_names();

}  // namespace prodgeo
