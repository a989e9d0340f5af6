#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "prodgeo/catalog.hpp"
#include "prodgeo/diagnostics.hpp"
#include "prodgeo/partial_tube.hpp"
#include "prodgeo/umbilical_family.hpp"

using namespace prodgeo;
using Eigen::VectorXd;

namespace {

VectorXd pt2(double a, double b) {
  VectorXd u(2);
  u << a, b;
  return u;
}

VectorXd mid(const Chart& c, double f = 0.55) {
  VectorXd u(c.m);
  for (int i = 0; i < c.m; ++i) u[i] = (1 - f) * c.domain.lo[i] + f * c.domain.hi[i];
  return u;
}

}  // namespace

TEST_CASE("umbilicity residual vanishes across the family") {
  for (auto [p, q] : {std::pair{2.0, 1.0}, {1.5, 0.5}, {1.0, 0.0}}) {
    const Chart c = Y_chart(FamilyParams(p, q));
    for (const VectorXd& u : offset_grid(c.domain, 7)) {
      CAPTURE(p);
      CAPTURE(q);
      CHECK(umbilicity_residual(c, u) < 1e-5);
    }
  }
  CHECK(umbilicity_residual(slice_sphere_chart(), pt2(0.3, 0.7)) < 1e-5);
}

TEST_CASE("latitude cylinder umbilicity gap matches the analytic curvatures") {
  // Oracle: principal curvatures cot(1) and 0, so the residual is cot(1)/2.
  const double expected = 0.5 / std::tan(1.0);
  const double r = umbilicity_residual(latitude_cylinder_chart(), pt2(0.8, 0.3));
  CHECK(r == doctest::Approx(expected).epsilon(1e-5));
  CHECK(r >= 0.1);
}

TEST_CASE("class-A residual separates tubes from the sheared graph") {
  for (const auto& name : {"s3_k1", "h3_k2", "cylinder_k0"}) {
    const Chart c = build_tube(tube_fixture(name));
    const auto r = class_a_residual(c, mid(c));
    REQUIRE(r.has_value());
    CHECK(*r < 1e-5);
  }
  const auto umb = class_a_residual(Y_chart(FamilyParams(2.0, 1.5)), pt2(1.3, 0.31));
  REQUIRE(umb.has_value());
  CHECK(*umb < 1e-5);

  const auto graph = class_a_residual(tilted_graph_chart(), pt2(0.2, 0.8));
  REQUIRE(graph.has_value());
  CHECK(*graph > 1e-4);
}

TEST_CASE("class-A residual is not applicable on slice charts") {
  CHECK_FALSE(class_a_residual(great_sphere_chart(), pt2(0.3, 0.7)).has_value());
}

TEST_CASE("eta parallelism splits along the vertical-gradient direction") {
  const VectorXd u = pt2(2.0, 0.3);
  // Geodesic profile: eta is parallel in the full normal connection.
  const auto good = parallel_eta_residual(build_tube(tube_fixture("s3_geodesic_k1")), u);
  CHECK(good.full < 1e-3);
  CHECK(good.cross_check < 1e-3);
  // Slice sphere: eta is the constant vertical section.
  const auto slice = parallel_eta_residual(great_sphere_chart(), pt2(0.3, 0.7));
  CHECK(slice.full < 1e-3);
  // Curving profile: parallel along the orthogonal directions only.
  const auto bad = parallel_eta_residual(build_tube(tube_fixture("s3_k1")), u);
  CHECK(bad.along_t_perp < 1e-3);
  CHECK(bad.full > 1e-2);
  CHECK(bad.cross_check < 1e-3);
}

TEST_CASE("flat normal bundle holds for class-A surfaces and fails over the Veronese") {
  CHECK(flat_normal_bundle_residual(Y_chart(FamilyParams(2.0, 1.5)), pt2(1.3, 0.31)) < 1e-5);

  // Codimension one: a single shape operator commutes with itself exactly.
  CHECK(flat_normal_bundle_residual(latitude_cylinder_chart(), pt2(0.8, 0.3)) == 0.0);

  // Oracle for the negative control: the base itself has non-commuting
  // shape operators, and the tube inherits them.
  const PartialTubeSpec spec = tube_fixture("veronese_k1");
  CHECK(flat_normal_bundle_residual(spec.frame.base, pt2(0.6, 0.7)) > 1e-4);
  const Chart tube = build_tube(spec);
  VectorXd u(3);
  u << 0.6, 0.7, 0.1;
  CHECK(flat_normal_bundle_residual(tube, u) > 1e-4);
}

TEST_CASE("first normal space dimensions") {
  // Umbilical non-geodesic: the span of the second fundamental form is a line.
  CHECK(first_normal_space(slice_sphere_chart(), pt2(0.3, 0.7)).dimension == 1);
  // Totally geodesic: empty span.
  VectorXd u3(3);
  u3 << 0.2, 0.8, 0.1;
  CHECK(first_normal_space(product_hypersurface_chart(), u3).dimension == 0);
}

TEST_CASE("codimension reduction across the family height dichotomy") {
  // Height zero: the chart fits in a one-lower product, rank ell = 1.
  const Chart flat = pad_chart(Y_chart(FamilyParams(2.0, 1.0)), 2);
  const auto red0 = codimension_reduction_check(flat, offset_grid(flat.domain, 5, 5e-2));
  CHECK(red0.ell == 1);
  CHECK(red0.fitted_dim == red0.expected_fitted_dim);
  CHECK(red0.parallel_residual < 1e-3);
  CHECK(red0.dajczer_i_residual < 1e-3);
  CHECK(red0.dajczer_ii_residual < 1e-3);

  // Positive height in one extra dimension: rank ell = 2.
  const Chart tall = pad_chart(Y_chart(FamilyParams(2.0, 1.5)), 1);
  const auto red1 = codimension_reduction_check(tall, offset_grid(tall.domain, 5, 5e-2));
  CHECK(red1.ell == 2);

  // Totally geodesic charts: empty first normal space.
  const Chart great = great_sphere_chart();
  const auto redg = codimension_reduction_check(great, interior_grid(great.domain, 5, 5e-2));
  CHECK(redg.ell == 1);  // eta alone
  CHECK(redg.parallel_residual < 1e-10);
  CHECK(redg.fitted_dim == redg.expected_fitted_dim);

  Chart product = product_hypersurface_chart();
  const auto redp = codimension_reduction_check(product, interior_grid(product.domain, 3, 5e-2));
  CHECK(redp.ell == 0);  // eta vanishes as well
  CHECK(redp.parallel_residual < 1e-10);
}

TEST_CASE("rank jumps across the grid are reported") {
  // Sphere graph whose second quadratic direction switches off along a line:
  // the span of the second fundamental form has rank 2 away from u2 = 0 and
  // rank 1 on it.
  Chart c;
  c.ambient = {1, 4};
  c.m = 2;
  c.domain = Box::of({-0.4, -0.4}, {0.4, 0.4});
  c.eval = [](const VectorXd& u) {
    VectorXd v(6);
    v << 1.0, u[0], u[1], u[0] * u[0] + u[1] * u[1], u[1] * u[1] * u[1], 0.0;
    VectorXd x = v;
    x.head(5) /= v.head(5).norm();
    return x;
  };
  c.label = "rank-switching graph";

  std::vector<VectorXd> grid;
  VectorXd a(2), b(2);
  a << 0.1, 0.0;  // on the degenerate line
  b << 0.1, 0.3;
  grid.push_back(a);
  grid.push_back(b);
  CHECK_THROWS_AS(codimension_reduction_check(c, grid), NonConstantRank);
}

TEST_CASE("quadratic form values on surface charts") {
  const Chart fam = Y_chart(FamilyParams(2.0, 1.5));
  const VectorXd u = pt2(1.3, 0.31);
  const FundamentalData fd = fundamental_at(fam, u);
  const auto& g = fd.frame.metric;
  const VectorXd T = fd.frame.T;
  const double t2 = T.dot(g * T);
  REQUIRE(t2 > 1e-8);

  // X orthogonal to T: both terms vanish on an umbilical chart.
  VectorXd X(2);
  X << -(g * T)[1], (g * T)[0];
  X = (g.inverse() * X).eval();
  CHECK(std::abs(X.dot(g * T)) < 1e-12);
  CHECK(std::abs(abresch_rosenberg_Q(fam, u, X, T)) < 1e-6);

  // Q(T,T) against direct substitution of the umbilical form.
  const double H2 = fd.mean_curvature.squaredNorm();
  const double expected = 2.0 * t2 * H2 - 1.0 * t2 * t2;
  CHECK(abresch_rosenberg_Q(fam, u, T, T) == doctest::Approx(expected).epsilon(1e-6));

  // Totally geodesic slice chart: the form vanishes identically.
  const Chart great = great_sphere_chart();
  const VectorXd v = pt2(0.3, 0.7);
  VectorXd e1 = VectorXd::Unit(2, 0), e2 = VectorXd::Unit(2, 1);
  CHECK(std::abs(abresch_rosenberg_Q(great, v, e1, e2)) < 1e-8);
  CHECK(std::abs(abresch_rosenberg_Q(great, v, e1, e1)) < 1e-8);

  VectorXd u3(3);
  u3 << 0.2, 0.8, 0.1;
  CHECK_THROWS_AS(abresch_rosenberg_Q(product_hypersurface_chart(), u3, e1, e2),
                  WrongDimension);
}

TEST_CASE("three characterizations of class A agree on the corpus") {
  std::vector<Chart> corpus = {build_tube(tube_fixture("s3_k1")),
                               build_tube(tube_fixture("h3_k1")),
                               Y_chart(FamilyParams(2.0, 1.5)),
                               vertical_cylinder_chart(),
                               latitude_cylinder_chart(),
                               tilted_graph_chart()};
  int applicable = 0;
  for (const Chart& c : corpus) {
    for (const VectorXd& u : offset_grid(c.domain, 3, 5e-2)) {
      const auto a = class_a_residual(c, u);
      if (!a) continue;
      ++applicable;
      const bool class_a = *a < 1e-5;
      const bool eta_par = parallel_eta_residual(c, u).along_t_perp < 1e-3;
      const bool commute = nu_commutator_residual(c, u) < 1e-5;
      CAPTURE(c.label);
      CHECK(class_a == eta_par);
      CHECK(class_a == commute);
    }
  }
  CHECK(applicable > 20);
}

TEST_CASE("flat normal bundle of the flat immersion matches class A plus flat bundle") {
  // Charts with nowhere-vanishing T only.
  std::vector<Chart> corpus = {build_tube(tube_fixture("s3_k1")),
                               build_tube(tube_fixture("s3_k2")),
                               vertical_cylinder_chart(), tilted_graph_chart()};
  for (const Chart& c : corpus) {
    for (const VectorXd& u : sample_points(c.domain, 4, 5e-2)) {
      const auto a = class_a_residual(c, u);
      REQUIRE(a.has_value());
      const bool lhs = flat_normal_bundle_residual(c, u) < 1e-5 && *a < 1e-5;
      const bool rhs = extended_commutator_residual(c, u) < 1e-5;
      CAPTURE(c.label);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("umbilical points are class-A points") {
  std::vector<Chart> corpus = {Y_chart(FamilyParams(2.0, 1.5)), slice_sphere_chart(),
                               latitude_cylinder_chart()};
  for (const Chart& c : corpus) {
    for (const VectorXd& u : offset_grid(c.domain, 3, 5e-2)) {
      if (umbilicity_residual(c, u) < 1e-5) {
        const auto a = class_a_residual(c, u);
        if (a) CHECK(*a < 1e-5);
      }
    }
  }
}
