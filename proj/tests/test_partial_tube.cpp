#include <doctest.h>

#include <cmath>

#include "prodgeo/catalog.hpp"
#include "prodgeo/diagnostics.hpp"
#include "prodgeo/partial_tube.hpp"
#include "prodgeo/profile_ode.hpp"
#include "prodgeo/rotational.hpp"

using namespace prodgeo;
using Eigen::VectorXd;

namespace {

VectorXd interior(const Chart& c, double f) {
  VectorXd u(c.m);
  for (int i = 0; i < c.m; ++i) u[i] = (1 - f) * c.domain.lo[i] + f * c.domain.hi[i];
  return u;
}

}  // namespace

TEST_CASE("fixture curves carry consistent derivatives") {
  for (const auto& name : tube_fixture_names()) {
    const CurveAlpha curve = tube_fixture(name).curve;
    const double h = 1e-5;
    for (double f : {0.2, 0.5, 0.8}) {
      const double s = curve.s_lo + f * (curve.s_hi - curve.s_lo);
      const VectorXd d1_fd = (curve.value(s + h) - curve.value(s - h)) / (2 * h);
      const VectorXd d2_fd =
          (curve.value(s + h) - 2 * curve.value(s) + curve.value(s - h)) / (h * h);
      CAPTURE(name);
      CHECK((curve.d1(s) - d1_fd).cwiseAbs().maxCoeff() < 1e-7);
      CHECK((curve.d2(s) - d2_fd).cwiseAbs().maxCoeff() < 1e-5);
    }
  }
}

TEST_CASE("the k=0 tube over the equator is the vertical cylinder") {
  const Chart tube = build_tube(tube_fixture("cylinder_k0"));
  for (const VectorXd& u : interior_grid(tube.domain, 5)) {
    VectorXd expect(4);
    expect << std::cos(u[0]), std::sin(u[0]), 0.0, u[1];
    CHECK((tube.eval(u) - expect).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("tubes satisfy the compatibility suite") {
  const Chart tube = build_tube(tube_fixture("s3_k1"));
  for (const VectorXd& u : sample_points(tube.domain, 8, 5e-2)) {
    const auto res = compatibility_residuals(tube, u);
    CHECK(res.max() < 1e-3);
  }
}

TEST_CASE("regularity over a totally geodesic base") {
  // Base shape operators vanish, so det P = a_0(s)^(m-1).
  PartialTubeSpec spec = tube_fixture("s3_geodesic_k1");
  VectorXd x(1);
  x << 2.0;
  const auto reg = regularity(spec, x, 0.4);
  const double a0 = spec.curve.value(0.4)[0];
  CHECK(reg.det == doctest::Approx(a0).epsilon(1e-6));
  CHECK(reg.regular);

  // A curve crossing a_0 = 0 produces a singular point.
  spec.curve.s_lo = 1.2;
  spec.curve.s_hi = 2.0;
  spec.curve.value = [](double s) {
    VectorXd a(3);
    a << std::cos(s), std::sin(s), s;
    return a;
  };
  spec.curve.d1 = [](double s) {
    VectorXd a(3);
    a << -std::sin(s), std::cos(s), 1.0;
    return a;
  };
  spec.curve.d2 = [](double s) {
    VectorXd a(3);
    a << -std::cos(s), -std::sin(s), 0.0;
    return a;
  };
  const auto sing = regularity(spec, x, M_PI / 2.0);
  CHECK_FALSE(sing.regular);

  // Closed forms are unavailable at the pinch itself.
  VectorXd xi = VectorXd::Zero(5);
  xi[3] = 1.0;
  CHECK_THROWS_AS(tube_shape_closed_form(spec, x, M_PI / 2.0, xi), SingularP);
}

TEST_CASE("small-circle tube pinches where the analytic determinant vanishes") {
  // Oracle: the base latitude circle has shape operator -cot(1) in its
  // curvature-normal direction, so det P = cos(s) + cot(1) sin(s), which
  // vanishes exactly at s = -1.
  const PartialTubeSpec spec = tube_fixture("small_circle_k1");
  VectorXd x(1);
  x << 1.0;
  const double c = 1.0 / std::tan(1.0);
  for (double s : {-0.5, 0.3, 0.9}) {
    const auto reg = regularity(spec, x, s);
    CHECK(reg.det == doctest::Approx(std::cos(s) + c * std::sin(s)).epsilon(1e-6));
  }
  CHECK(std::abs(regularity(spec, x, -1.0).det) < 1e-7);

  const auto intervals = regular_intervals(spec, x);
  REQUIRE(intervals.size() == 2);
  CHECK(intervals[0].second == doctest::Approx(-1.01).epsilon(1e-3));
  CHECK(intervals[1].first == doctest::Approx(-0.99).epsilon(1e-3));
}

TEST_CASE("closed-form shape operators match the numerical pipeline") {
  for (const auto& name : tube_fixture_names()) {
    const PartialTubeSpec spec = tube_fixture(name);
    const Chart tube = tube_chart_unchecked(spec);
    for (double f : {0.3, 0.7}) {
      const VectorXd u = interior(tube, f);
      const VectorXd x = u.head(tube.m - 1);
      const double s = u[tube.m - 1];
      if (spec.frame.fiber != FiberKind::round) continue;
      const FundamentalData fd = fundamental_at(tube, u);
      for (int a = 0; a < fd.frame.codim(); ++a) {
        const auto closed = tube_shape_closed_form(spec, x, s, fd.frame.normal.col(a));
        CAPTURE(name);
        CAPTURE(f);
        CAPTURE(a);
        CHECK((closed - fd.shape[a]).cwiseAbs().maxCoeff() < 1e-5);
      }
    }
  }
}

TEST_CASE("cylinder profile has zero vertical eigenvalue") {
  const PartialTubeSpec spec = tube_fixture("cylinder_k0");
  const Chart tube = tube_chart_unchecked(spec);
  const VectorXd u = interior(tube, 0.4);
  const FundamentalData fd = fundamental_at(tube, u);
  const auto closed =
      tube_shape_closed_form(spec, u.head(1), u[1], fd.frame.normal.col(0));
  CHECK(std::abs(closed(1, 1)) < 1e-12);
}

TEST_CASE("family member as a tube has scalar horizontal blocks") {
  // Three-dimensional member: the reconstructed profile drives a rotational
  // presentation whose tube form has 2x2 horizontal shape blocks.
  const FamilyParams fp(2.0, 1.5, 3);
  const auto prof = reconstruct_alpha(fp, 0.0, +1);
  RotationalSpec rot;
  rot.epsilon = 1;
  rot.n = 4;
  rot.m = 3;
  rot.kind = RotationalKind::spherical_e1;
  rot.profile.s_lo = -0.8 * fp.half_width();
  rot.profile.s_hi = 0.8 * fp.half_width();
  rot.profile.value = [prof](double s) {
    VectorXd a = prof.value(s);
    VectorXd out(5);
    out << a[0], a[1], a[2], 0.0, a[3];
    return out;
  };
  rot.profile.d1 = [prof](double s) {
    VectorXd a = prof.d1(s);
    VectorXd out(5);
    out << a[0], a[1], a[2], 0.0, a[3];
    return out;
  };
  rot.profile.d2 = [prof](double s) {
    VectorXd a = prof.d2(s);
    VectorXd out(5);
    out << a[0], a[1], a[2], 0.0, a[3];
    return out;
  };
  const PartialTubeSpec spec = rotational_as_tube(rot);
  const Chart tube = build_tube(spec);
  const VectorXd u = interior(tube, 0.6);
  const FundamentalData fd = fundamental_at(tube, u);
  for (int a = 0; a < fd.frame.codim(); ++a) {
    const auto closed =
        tube_shape_closed_form(spec, u.head(2), u[2], fd.frame.normal.col(a));
    const auto blk = closed.topLeftCorner(2, 2);
    CHECK(std::abs(blk(0, 1)) < 1e-6);
    CHECK(std::abs(blk(1, 0)) < 1e-6);
    CHECK(blk(0, 0) == doctest::Approx(blk(1, 1)).epsilon(1e-5).scale(1.0));
  }
}

TEST_CASE("vertical coefficient of T matches the frame computation") {
  // Flat profile: unit coefficient.
  {
    const PartialTubeSpec spec = tube_fixture("cylinder_k0");
    VectorXd x(1);
    x << 2.0;
    const auto tf = tube_T_field(spec, x, 0.3);
    CHECK(tf.t_coeff == doctest::Approx(1.0));
    REQUIRE(tf.frame_deviation.has_value());
    CHECK(*tf.frame_deviation < 1e-7);
  }
  // Helical profile: direct substitution of |a'|^2 = 1.36.
  {
    const PartialTubeSpec spec = tube_fixture("s3_geodesic_k1");
    VectorXd x(1);
    x << 2.0;
    const auto tf = tube_T_field(spec, x, 0.4);
    CHECK(tf.t_coeff == doctest::Approx(1.0 / 1.36).epsilon(1e-10));
    REQUIRE(tf.frame_deviation.has_value());
    CHECK(*tf.frame_deviation < 1e-7);
  }
  // Family profile at the apex: the vertical component has a critical point,
  // so T vanishes (the squared speed there is 1).
  {
    const FamilyParams fp(2.0, 1.0);
    const auto prof = reconstruct_alpha(fp, 0.0, +1);
    RotationalSpec rot;
    rot.epsilon = 1;
    rot.n = 3;
    rot.m = 2;
    rot.kind = RotationalKind::spherical_e1;
    rot.profile.s_lo = -0.8 * fp.half_width();
    rot.profile.s_hi = 0.8 * fp.half_width();
    rot.profile.value = prof.value;
    rot.profile.d1 = prof.d1;
    rot.profile.d2 = prof.d2;
    const PartialTubeSpec spec = rotational_as_tube(rot);
    VectorXd x(1);
    x << 2.0;
    // The orbit radius vanishes at the apex, so no frame comparison exists
    // there; the coefficient itself is the vertical derivative over the
    // squared speed, both taken from the curve.
    const auto tf = tube_T_field(spec, x, 0.0);
    CHECK(std::abs(tf.t_coeff) < 1e-12);
    CHECK(std::abs(prof.d1(0.0).squaredNorm() - 1.0) < 1e-10);
    CHECK_FALSE(tf.frame_deviation.has_value());
    const auto away = tube_T_field(spec, x, 0.3);
    REQUIRE(away.frame_deviation.has_value());
    CHECK(*away.frame_deviation < 1e-7);
  }
}

TEST_CASE("tube validation rejects broken inputs") {
  // Non-parallel section: a frame rotating inside the normal bundle.
  PartialTubeSpec spec = tube_fixture("s3_k1");
  spec.frame.sections[0] = [](const VectorXd& t) {
    VectorXd x(5);
    x << 0.0, 0.0, std::cos(t[0]), std::sin(t[0]), 0.0;
    return x;
  };
  CHECK_THROWS_AS(build_tube(spec), FrameNotParallel);

  // Curve leaving the quadric.
  PartialTubeSpec bad = tube_fixture("s3_k1");
  bad.curve.value = [](double s) {
    VectorXd a(3);
    a << std::cos(s), 1.1 * std::sin(s), s;
    return a;
  };
  CHECK_THROWS_AS(build_tube(bad), ConstraintViolated);

  PartialTubeSpec mismatch = tube_fixture("s3_k1");
  mismatch.curve.k = 2;
  CHECK_THROWS_AS(build_tube(mismatch), WrongDimension);
}

TEST_CASE("horizontal lifts stay orthogonal to the profile direction") {
  // The fixtures all keep the vertical profile component strictly monotone,
  // so T never vanishes on them either.
  for (const auto& name : {"s3_k1", "h3_k2", "veronese_k1"}) {
    const Chart tube = build_tube(tube_fixture(name));
    for (const VectorXd& u : sample_points(tube.domain, 6, 5e-2)) {
      const FrameData F = frame_at(tube, u);
      for (int i = 0; i + 1 < tube.m; ++i)
        CHECK(std::abs(F.metric(i, tube.m - 1)) < 1e-7);
      CHECK(F.T_norm2() > 1e-4);
    }
  }
}
