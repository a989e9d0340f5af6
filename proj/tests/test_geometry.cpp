#include <doctest.h>

#include <cmath>

#include "prodgeo/catalog.hpp"
#include "prodgeo/diagnostics.hpp"
#include "prodgeo/geometry.hpp"
#include "prodgeo/umbilical_family.hpp"

using namespace prodgeo;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd pt2(double a, double b) {
  VectorXd u(2);
  u << a, b;
  return u;
}

}  // namespace

TEST_CASE("slice immersion has purely normal vertical direction") {
  const Chart c = great_sphere_chart();
  const FrameData F = frame_at(c, pt2(0.3, 0.7));
  CHECK(std::sqrt(F.T_norm2()) < 1e-12);
  CHECK(c.ambient.norm2(F.eta) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("vertical cylinder has purely tangent vertical direction") {
  const Chart c = vertical_cylinder_chart();
  const FrameData F = frame_at(c, pt2(0.8, 0.3));
  CHECK(F.T_norm2() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::sqrt(c.ambient.norm2(F.eta)) < 1e-10);
}

TEST_CASE("vertical split is a partition of unity on the family chart") {
  const Chart c = Y_chart(FamilyParams(2.0, 1.0));
  for (const VectorXd& u : offset_grid(c.domain, 7)) {
    const FrameData F = frame_at(c, u);
    CHECK(std::abs(F.T_norm2() + c.ambient.norm2(F.eta) - 1.0) < 1e-8);
  }
}

TEST_CASE("totally geodesic product has vanishing second fundamental form") {
  const Chart c = product_hypersurface_chart();
  VectorXd u(3);
  u << 0.2, 0.8, 0.1;
  const FundamentalData fd = fundamental_at(c, u);
  for (const auto& a : fd.alpha) CHECK(a.cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("small slice sphere is umbilical with the classical curvature") {
  const double rho = 0.8;
  const Chart c = slice_sphere_chart(rho);
  const VectorXd u = pt2(0.25, 0.9);
  const FundamentalData fd = fundamental_at(c, u);
  // Oracle: a geodesic sphere of radius rho in the 3-sphere curves like
  // cot(rho) in every tangent direction.
  const double expected = 1.0 / std::tan(rho);
  CHECK(fd.mean_curvature.norm() == doctest::Approx(expected).epsilon(1e-6));
  for (int a = 0; a < fd.frame.codim(); ++a)
    CHECK((fd.alpha[a] - fd.mean_curvature[a] * fd.frame.metric).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("cylinder ruling direction is flat") {
  const Chart c = vertical_cylinder_chart();
  const VectorXd u = pt2(0.9, -0.2);
  const FundamentalData fd = fundamental_at(c, u);
  // The vertical coordinate direction is a geodesic of the cylinder.
  for (const auto& A : fd.shape) {
    VectorXd vertical = VectorXd::Zero(2);
    vertical[1] = 1.0;
    CHECK((A * vertical).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("compatibility equations hold on the chart corpus") {
  const std::vector<Chart> corpus = {great_sphere_chart(), slice_sphere_chart(),
                                     vertical_cylinder_chart(),
                                     Y_chart(FamilyParams(2.0, 1.5))};
  for (const Chart& c : corpus) {
    // Offset nodes keep clear of the family apex line.
    for (const VectorXd& u : offset_grid(c.domain, 4, 4e-2)) {
      const auto res = compatibility_residuals(c, u);
      CAPTURE(c.label);
      CHECK(res.gauss < 1e-3);
      CHECK(res.codazzi < 1e-3);
      CHECK(res.ricci < 1e-3);
    }
  }
}

TEST_CASE("slice sphere has exactly flat normal curvature") {
  // Exact-arithmetic value is zero: the frame splits into a constant vertical
  // section and an in-slice normal with no mixing.
  const auto res = compatibility_residuals(slice_sphere_chart(), pt2(0.3, 0.7));
  CHECK(res.ricci < 1e-6);
}

TEST_CASE("perturbed chart is flagged by the compatibility residuals") {
  const Chart bad = perturbed_chart(Y_chart(FamilyParams(2.0, 1.5)), 1e-2);
  FdConfig loose;
  loose.surface_guard = 1e9;
  const auto res = compatibility_residuals(bad, pt2(1.3, 0.31), loose);
  CHECK(res.max() > 1e-2);
}

TEST_CASE("inclusion identities hold on the chart corpus") {
  const std::vector<Chart> corpus = {great_sphere_chart(), vertical_cylinder_chart(),
                                     Y_chart(FamilyParams(1.5, 0.5)),
                                     build_tube(tube_fixture("s3_k1")),
                                     build_tube(tube_fixture("h3_k1")),
                                     rotational_chart(rotational_fixture("parabolic"))};
  for (const Chart& c : corpus) {
    for (const VectorXd& u : offset_grid(c.domain, 3, 4e-2)) {
      const auto res = inclusion_residuals(c, u);
      CAPTURE(c.label);
      CHECK(res.max() < 1e-3);
    }
  }
}

TEST_CASE("slice chart sees minus the identity in the nu direction") {
  const Chart c = slice_sphere_chart();
  const VectorXd u = pt2(0.3, 0.7);
  const FrameData F = frame_at(c, u);
  const MatrixXd Anu = shape_operator(c, u, F.nu);
  CHECK((Anu + MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("cylinder kills the normal part of the nu derivative") {
  const auto res = inclusion_residuals(vertical_cylinder_chart(), pt2(0.8, 0.1));
  CHECK(res.normalnu < 1e-7);
}

TEST_CASE("tangent bases converge at second order") {
  const Chart c = great_sphere_chart();
  const VectorXd u = pt2(0.3, 0.7);
  MatrixXd exact(5, 2);
  exact.col(0) << -std::sin(u[0]) * std::cos(u[1]), -std::sin(u[0]) * std::sin(u[1]),
      std::cos(u[0]), 0, 0;
  exact.col(1) << -std::cos(u[0]) * std::sin(u[1]), std::cos(u[0]) * std::cos(u[1]), 0, 0, 0;
  FdConfig coarse, fine;
  coarse.first_step = 1e-3;
  fine.first_step = 5e-4;
  const double e1 = (frame_at(c, u, coarse).tangent - exact).cwiseAbs().maxCoeff();
  const double e2 = (frame_at(c, u, fine).tangent - exact).cwiseAbs().maxCoeff();
  CHECK(e1 / e2 > 3.5);
  CHECK(e1 / e2 < 4.5);
}

TEST_CASE("frame_at rejects broken inputs") {
  Chart off = great_sphere_chart();
  auto eval = off.eval;
  off.eval = [eval](const VectorXd& u) { return (1.01 * eval(u)).eval(); };
  CHECK_THROWS_AS(frame_at(off, pt2(0.3, 0.7)), OffSurface);

  // The family parametrization collapses its orbit sphere along s = 0.
  const Chart fam = Y_chart(FamilyParams(2.0, 1.0));
  CHECK_THROWS_AS(frame_at(fam, pt2(1.0, 0.0)), SingularMetric);

  const Chart c = great_sphere_chart();
  CHECK_THROWS_AS(frame_at(c, pt2(-0.6, 0.7)), StencilOutOfDomain);
}
