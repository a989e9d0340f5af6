#include "prodgeo/catalog.hpp"

#include <cmath>

#include "prodgeo/errors.hpp"

namespace prodgeo {

using Eigen::VectorXd;

Chart slice_sphere_chart(double rho) {
  Chart c;
  c.ambient = {1, 3};
  c.m = 2;
  c.domain = Box::of({-0.6, 0.2}, {0.6, 1.4});
  c.eval = [rho](const VectorXd& u) {
    VectorXd x(5);
    x << std::sin(rho) * std::cos(u[0]) * std::cos(u[1]),
        std::sin(rho) * std::cos(u[0]) * std::sin(u[1]), std::sin(rho) * std::sin(u[0]),
        std::cos(rho), 0.0;
    return x;
  };
  c.label = "slice sphere";
  return c;
}

Chart great_sphere_chart() {
  Chart c = slice_sphere_chart(M_PI / 2.0);
  c.label = "great slice sphere";
  return c;
}

Chart product_hypersurface_chart() {
  Chart c;
  c.ambient = {1, 3};
  c.m = 3;
  c.domain = Box::of({-0.6, 0.2, -1.0}, {0.6, 1.4, 1.0});
  c.eval = [](const VectorXd& u) {
    VectorXd x(5);
    x << std::cos(u[0]) * std::cos(u[1]), std::cos(u[0]) * std::sin(u[1]), std::sin(u[0]), 0.0,
        u[2];
    return x;
  };
  c.label = "totally geodesic product hypersurface";
  return c;
}

Chart vertical_cylinder_chart() {
  Chart c;
  c.ambient = {1, 3};
  c.m = 2;
  c.domain = Box::of({0.2, -1.0}, {1.4, 1.0});
  c.eval = [](const VectorXd& u) {
    VectorXd x(5);
    x << std::cos(u[0]), std::sin(u[0]), 0.0, 0.0, u[1];
    return x;
  };
  c.label = "equator cylinder";
  return c;
}

Chart latitude_cylinder_chart(double rho) {
  Chart c;
  c.ambient = {1, 2};
  c.m = 2;
  c.domain = Box::of({0.2, -1.0}, {1.4, 1.0});
  c.eval = [rho](const VectorXd& u) {
    VectorXd x(4);
    x << std::sin(rho) * std::cos(u[0]), std::sin(rho) * std::sin(u[0]), std::cos(rho), u[1];
    return x;
  };
  c.label = "latitude cylinder";
  return c;
}

Chart tilted_graph_chart() {
  Chart c;
  c.ambient = {1, 2};
  c.m = 2;
  c.domain = Box::of({-0.6, 0.2}, {0.6, 1.4});
  c.eval = [](const VectorXd& u) {
    VectorXd x(4);
    x << std::cos(u[0]) * std::cos(u[1]), std::cos(u[0]) * std::sin(u[1]), std::sin(u[0]),
        u[0] + u[1];
    return x;
  };
  c.label = "tilted graph";
  return c;
}

Chart perturbed_chart(const Chart& base, double amplitude) {
  Chart c = base;
  auto eval = base.eval;
  const int nh = base.ambient.total_dim() - 1;
  c.eval = [eval, amplitude, nh](const VectorXd& u) {
    VectorXd x = eval(u);
    double phase = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) phase += (3.0 - double(i)) * u[i];
    x.head(nh) *= 1.0 + amplitude * std::sin(phase);
    return x;
  };
  c.label = base.label + " (perturbed)";
  return c;
}

namespace {

// Unit circle in the 3-sphere with two constant parallel normals.
ParallelFrame circle_in_s3_frame(int sections) {
  ParallelFrame f;
  f.base.ambient = {1, 3};
  f.base.m = 1;
  f.base.domain = Box::of({0.1}, {2.0 * M_PI - 0.1});
  f.base.eval = [](const VectorXd& t) {
    VectorXd x(5);
    x << std::cos(t[0]), std::sin(t[0]), 0.0, 0.0, 0.0;
    return x;
  };
  f.base.label = "unit circle in the 3-sphere";
  for (int i = 0; i < sections; ++i) {
    VectorXd e = VectorXd::Zero(5);
    e[2 + i] = 1.0;
    f.sections.push_back([e](const VectorXd&) { return e; });
  }
  return f;
}

// Geodesic of hyperbolic 3-space with constant parallel normals.
ParallelFrame geodesic_in_h3_frame(int sections) {
  ParallelFrame f;
  f.base.ambient = {-1, 3};
  f.base.m = 1;
  f.base.domain = Box::of({-1.1}, {1.1});
  f.base.eval = [](const VectorXd& t) {
    VectorXd x(5);
    x << std::cosh(t[0]), std::sinh(t[0]), 0.0, 0.0, 0.0;
    return x;
  };
  f.base.label = "geodesic of hyperbolic 3-space";
  for (int i = 0; i < sections; ++i) {
    VectorXd e = VectorXd::Zero(5);
    e[2 + i] = 1.0;
    f.sections.push_back([e](const VectorXd&) { return e; });
  }
  return f;
}

// Minimal Veronese surface in the 4-sphere, padded into the 5-sphere.
ParallelFrame veronese_frame() {
  ParallelFrame f;
  f.base.ambient = {1, 5};
  f.base.m = 2;
  f.base.domain = Box::of({0.2, 0.3}, {1.0, 1.1});
  f.base.eval = [](const VectorXd& u) {
    const double x = std::sqrt(3.0) * std::cos(u[0]) * std::cos(u[1]);
    const double y = std::sqrt(3.0) * std::cos(u[0]) * std::sin(u[1]);
    const double z = std::sqrt(3.0) * std::sin(u[0]);
    VectorXd v(7);
    v << x * y / std::sqrt(3.0), x * z / std::sqrt(3.0), y * z / std::sqrt(3.0),
        (x * x - y * y) / (2.0 * std::sqrt(3.0)), (x * x + y * y - 2.0 * z * z) / 6.0, 0.0, 0.0;
    return v;
  };
  f.base.label = "Veronese surface";
  VectorXd e = VectorXd::Zero(7);
  e[5] = 1.0;
  f.sections.push_back([e](const VectorXd&) { return e; });
  return f;
}

CurveAlpha circle_curve(int k, int epsilon, std::function<double(double)> angle,
                        std::function<double(double)> dangle,
                        std::function<double(double)> ddangle) {
  CurveAlpha c;
  c.k = k;
  c.epsilon = epsilon;
  c.s_lo = -0.9;
  c.s_hi = 0.9;
  if (epsilon == 1) {
    c.value = [angle](double s) {
      VectorXd a(3);
      a << std::cos(angle(s)), std::sin(angle(s)), s;
      return a;
    };
    c.d1 = [angle, dangle](double s) {
      VectorXd a(3);
      a << -dangle(s) * std::sin(angle(s)), dangle(s) * std::cos(angle(s)), 1.0;
      return a;
    };
    c.d2 = [angle, dangle, ddangle](double s) {
      const double w = angle(s), d = dangle(s), dd = ddangle(s);
      VectorXd a(3);
      a << -dd * std::sin(w) - d * d * std::cos(w), dd * std::cos(w) - d * d * std::sin(w), 0.0;
      return a;
    };
  } else {
    c.value = [angle](double s) {
      VectorXd a(3);
      a << std::cosh(angle(s)), std::sinh(angle(s)), s;
      return a;
    };
    c.d1 = [angle, dangle](double s) {
      VectorXd a(3);
      a << dangle(s) * std::sinh(angle(s)), dangle(s) * std::cosh(angle(s)), 1.0;
      return a;
    };
    c.d2 = [angle, dangle, ddangle](double s) {
      const double w = angle(s), d = dangle(s), dd = ddangle(s);
      VectorXd a(3);
      a << dd * std::sinh(w) + d * d * std::cosh(w), dd * std::cosh(w) + d * d * std::sinh(w),
          0.0;
      return a;
    };
  }
  return c;
}

}  // namespace

PartialTubeSpec tube_fixture(const std::string& name) {
  PartialTubeSpec spec;
  if (name == "cylinder_k0") {
    spec.frame.base.ambient = {1, 2};
    spec.frame.base.m = 1;
    spec.frame.base.domain = Box::of({0.1}, {2.0 * M_PI - 0.1});
    spec.frame.base.eval = [](const VectorXd& t) {
      VectorXd x(4);
      x << std::cos(t[0]), std::sin(t[0]), 0.0, 0.0;
      return x;
    };
    spec.frame.base.label = "equator circle";
    spec.curve.k = 0;
    spec.curve.epsilon = 1;
    spec.curve.s_lo = -1.0;
    spec.curve.s_hi = 1.0;
    spec.curve.value = [](double s) {
      VectorXd a(2);
      a << 1.0, s;
      return a;
    };
    spec.curve.d1 = [](double) {
      VectorXd a(2);
      a << 0.0, 1.0;
      return a;
    };
    spec.curve.d2 = [](double) { return VectorXd::Zero(2).eval(); };
    return spec;
  }
  if (name == "s3_k1") {
    spec.frame = circle_in_s3_frame(1);
    spec.curve = circle_curve(
        1, 1, [](double s) { return 0.25 * s * s + 0.5 * s + 0.3; },
        [](double s) { return 0.5 * s + 0.5; }, [](double) { return 0.5; });
    return spec;
  }
  if (name == "s3_geodesic_k1") {
    spec.frame = circle_in_s3_frame(1);
    spec.curve = circle_curve(
        1, 1, [](double s) { return 0.6 * s + 0.3; }, [](double) { return 0.6; },
        [](double) { return 0.0; });
    return spec;
  }
  if (name == "s3_k2") {
    spec.frame = circle_in_s3_frame(2);
    spec.curve.k = 2;
    spec.curve.epsilon = 1;
    spec.curve.s_lo = -0.9;
    spec.curve.s_hi = 0.9;
    auto w = [](double s) { return 0.3 * std::sin(s) + 0.2; };
    auto dw = [](double s) { return 0.3 * std::cos(s); };
    auto ddw = [](double s) { return -0.3 * std::sin(s); };
    auto v = [](double s) { return 0.5 * s; };
    spec.curve.value = [w, v](double s) {
      VectorXd a(4);
      a << std::cos(w(s)) * std::cos(v(s)), std::cos(w(s)) * std::sin(v(s)), std::sin(w(s)), s;
      return a;
    };
    spec.curve.d1 = [w, dw, v](double s) {
      const double cw = std::cos(w(s)), sw = std::sin(w(s));
      const double cv = std::cos(v(s)), sv = std::sin(v(s));
      VectorXd a(4);
      a << -dw(s) * sw * cv - 0.5 * cw * sv, -dw(s) * sw * sv + 0.5 * cw * cv, dw(s) * cw, 1.0;
      return a;
    };
    spec.curve.d2 = [w, dw, ddw, v](double s) {
      const double cw = std::cos(w(s)), sw = std::sin(w(s));
      const double cv = std::cos(v(s)), sv = std::sin(v(s));
      const double d = dw(s), dd = ddw(s);
      VectorXd a(4);
      a[0] = -dd * sw * cv - d * d * cw * cv + d * sw * sv * 0.5 + 0.5 * d * sw * sv -
             0.25 * cw * cv;
      a[1] = -dd * sw * sv - d * d * cw * sv - d * sw * cv * 0.5 - 0.5 * d * sw * cv -
             0.25 * cw * sv;
      a[2] = dd * cw - d * d * sw;
      a[3] = 0.0;
      return a;
    };
    return spec;
  }
  if (name == "h3_k1") {
    spec.frame = geodesic_in_h3_frame(1);
    spec.curve = circle_curve(
        1, -1, [](double s) { return 0.2 + 0.3 * s; }, [](double) { return 0.3; },
        [](double) { return 0.0; });
    return spec;
  }
  if (name == "h3_k2") {
    spec.frame = geodesic_in_h3_frame(2);
    spec.curve.k = 2;
    spec.curve.epsilon = -1;
    spec.curve.s_lo = -0.9;
    spec.curve.s_hi = 0.9;
    auto b = [](double s) { return 0.3 + 0.2 * s; };
    auto c = [](double s) { return 0.4 * s; };
    spec.curve.value = [b, c](double s) {
      VectorXd a(4);
      a << std::cosh(b(s)), std::sinh(b(s)) * std::cos(c(s)), std::sinh(b(s)) * std::sin(c(s)),
          s;
      return a;
    };
    spec.curve.d1 = [b, c](double s) {
      const double ch = std::cosh(b(s)), sh = std::sinh(b(s));
      const double cc = std::cos(c(s)), sc = std::sin(c(s));
      VectorXd a(4);
      a << 0.2 * sh, 0.2 * ch * cc - 0.4 * sh * sc, 0.2 * ch * sc + 0.4 * sh * cc, 1.0;
      return a;
    };
    spec.curve.d2 = [b, c](double s) {
      const double ch = std::cosh(b(s)), sh = std::sinh(b(s));
      const double cc = std::cos(c(s)), sc = std::sin(c(s));
      VectorXd a(4);
      a[0] = 0.04 * ch;
      a[1] = 0.04 * sh * cc - 2.0 * 0.2 * 0.4 * ch * sc - 0.16 * sh * cc;
      a[2] = 0.04 * sh * sc + 2.0 * 0.2 * 0.4 * ch * cc - 0.16 * sh * sc;
      a[3] = 0.0;
      return a;
    };
    return spec;
  }
  if (name == "veronese_k1") {
    spec.frame = veronese_frame();
    spec.curve = circle_curve(
        1, 1, [](double s) { return 0.2 + 0.25 * s; }, [](double) { return 0.25; },
        [](double) { return 0.0; });
    return spec;
  }
  if (name == "small_circle_k1") {
    // Latitude circle of the slice 2-sphere with its in-sphere curvature
    // normal as the section; the tube pinches where det P_s crosses zero.
    const double rho = 1.0;
    spec.frame.base.ambient = {1, 3};
    spec.frame.base.m = 1;
    spec.frame.base.domain = Box::of({0.1}, {2.0 * M_PI - 0.1});
    spec.frame.base.eval = [rho](const VectorXd& t) {
      VectorXd x(5);
      x << std::sin(rho) * std::cos(t[0]), std::sin(rho) * std::sin(t[0]), std::cos(rho), 0.0,
          0.0;
      return x;
    };
    spec.frame.base.label = "latitude circle";
    spec.frame.sections.push_back([rho](const VectorXd& t) {
      VectorXd x(5);
      x << std::cos(rho) * std::cos(t[0]), std::cos(rho) * std::sin(t[0]), -std::sin(rho), 0.0,
          0.0;
      return x;
    });
    spec.frame.sections.push_back([](const VectorXd&) {
      VectorXd x = VectorXd::Zero(5);
      x[3] = 1.0;
      return x;
    });
    spec.curve.k = 2;
    spec.curve.epsilon = 1;
    spec.curve.s_lo = -1.2;
    spec.curve.s_hi = 1.2;
    spec.curve.value = [](double s) {
      VectorXd a(4);
      a << std::cos(s), std::sin(s), 0.0, s;
      return a;
    };
    spec.curve.d1 = [](double s) {
      VectorXd a(4);
      a << -std::sin(s), std::cos(s), 0.0, 1.0;
      return a;
    };
    spec.curve.d2 = [](double s) {
      VectorXd a(4);
      a << -std::cos(s), -std::sin(s), 0.0, 0.0;
      return a;
    };
    return spec;
  }
  throw OutOfDomain("unknown tube fixture: " + name);
}

std::vector<std::string> tube_fixture_names() {
  return {"cylinder_k0", "s3_k1", "s3_geodesic_k1", "s3_k2",
          "h3_k1",       "h3_k2", "veronese_k1",    "small_circle_k1"};
}

RotationalSpec rotational_fixture(const std::string& name) {
  RotationalSpec spec;
  if (name == "spherical_e1") {
    spec.epsilon = 1;
    spec.n = 3;
    spec.m = 2;
    spec.kind = RotationalKind::spherical_e1;
    spec.profile.s_lo = -0.9;
    spec.profile.s_hi = 0.9;
    auto w = [](double s) { return 0.8 + 0.2 * std::sin(s); };
    auto dw = [](double s) { return 0.2 * std::cos(s); };
    auto v = [](double s) { return 0.3 * s; };
    spec.profile.value = [w, v](double s) {
      VectorXd a(4);
      a << std::cos(w(s)), std::sin(w(s)) * std::cos(v(s)), std::sin(w(s)) * std::sin(v(s)), s;
      return a;
    };
    spec.profile.d1 = [w, dw, v](double s) {
      const double cw = std::cos(w(s)), sw = std::sin(w(s));
      const double cv = std::cos(v(s)), sv = std::sin(v(s));
      VectorXd a(4);
      a << -dw(s) * sw, dw(s) * cw * cv - 0.3 * sw * sv, dw(s) * cw * sv + 0.3 * sw * cv, 1.0;
      return a;
    };
    spec.profile.d2 = [w, dw, v](double s) {
      const double cw = std::cos(w(s)), sw = std::sin(w(s));
      const double cv = std::cos(v(s)), sv = std::sin(v(s));
      const double d = dw(s), dd = -0.2 * std::sin(s);
      VectorXd a(4);
      a[0] = -dd * sw - d * d * cw;
      a[1] = dd * cw * cv - d * d * sw * cv - 0.6 * d * cw * sv - 0.09 * sw * cv;
      a[2] = dd * cw * sv - d * d * sw * sv + 0.6 * d * cw * cv - 0.09 * sw * sv;
      a[3] = 0.0;
      return a;
    };
    return spec;
  }
  if (name == "spherical_em1") {
    spec.epsilon = -1;
    spec.n = 3;
    spec.m = 2;
    spec.kind = RotationalKind::spherical_em1;
    spec.profile.s_lo = -0.9;
    spec.profile.s_hi = 0.9;
    auto w = [](double s) { return 0.6 + 0.15 * s; };
    auto v = [](double s) { return 0.25 * s; };
    spec.profile.value = [w, v](double s) {
      VectorXd a(4);
      a << std::cosh(w(s)), std::sinh(w(s)) * std::cos(v(s)), std::sinh(w(s)) * std::sin(v(s)),
          s;
      return a;
    };
    spec.profile.d1 = [w, v](double s) {
      const double ch = std::cosh(w(s)), sh = std::sinh(w(s));
      const double cv = std::cos(v(s)), sv = std::sin(v(s));
      VectorXd a(4);
      a << 0.15 * sh, 0.15 * ch * cv - 0.25 * sh * sv, 0.15 * ch * sv + 0.25 * sh * cv, 1.0;
      return a;
    };
    spec.profile.d2 = [w, v](double s) {
      const double ch = std::cosh(w(s)), sh = std::sinh(w(s));
      const double cv = std::cos(v(s)), sv = std::sin(v(s));
      VectorXd a(4);
      a[0] = 0.0225 * ch;
      a[1] = 0.0225 * sh * cv - 2.0 * 0.15 * 0.25 * ch * sv - 0.0625 * sh * cv;
      a[2] = 0.0225 * sh * sv + 2.0 * 0.15 * 0.25 * ch * cv - 0.0625 * sh * sv;
      a[3] = 0.0;
      return a;
    };
    return spec;
  }
  if (name == "hyperbolic") {
    RotationalSpec s = rotational_fixture("spherical_em1");
    s.kind = RotationalKind::hyperbolic;
    return s;
  }
  if (name == "parabolic") {
    spec.epsilon = -1;
    spec.n = 3;
    spec.m = 2;
    spec.kind = RotationalKind::parabolic;
    spec.profile.s_lo = -0.9;
    spec.profile.s_hi = 0.9;
    spec.profile.value = [](double s) {
      VectorXd a(4);
      const double a0 = -std::exp(0.2 * s);
      const double a1 = 0.3 * s;
      a << a0, a1, (1.0 + a1 * a1) * std::exp(-0.2 * s) / 2.0, s;
      return a;
    };
    spec.profile.d1 = [](double s) {
      VectorXd a(4);
      const double e = std::exp(0.2 * s), em = std::exp(-0.2 * s);
      const double a1 = 0.3 * s;
      a << -0.2 * e, 0.3, (0.6 * a1 - 0.2 * (1.0 + a1 * a1)) * em / 2.0, 1.0;
      return a;
    };
    spec.profile.d2 = [](double s) {
      VectorXd a(4);
      const double e = std::exp(0.2 * s), em = std::exp(-0.2 * s);
      const double a1 = 0.3 * s;
      a << -0.04 * e, 0.0,
          (0.18 - 0.2 * (0.6 * a1) - 0.2 * (0.6 * a1 - 0.2 * (1.0 + a1 * a1))) * em / 2.0, 0.0;
      return a;
    };
    return spec;
  }
  if (name == "slice_sphere_polar") {
    spec.epsilon = 1;
    spec.n = 2;
    spec.m = 2;
    spec.kind = RotationalKind::spherical_e1;
    spec.profile.s_lo = 0.2;
    spec.profile.s_hi = 1.2;
    spec.profile.value = [](double s) {
      VectorXd a(3);
      a << std::cos(s), std::sin(s), 0.0;
      return a;
    };
    spec.profile.d1 = [](double s) {
      VectorXd a(3);
      a << -std::sin(s), std::cos(s), 0.0;
      return a;
    };
    spec.profile.d2 = [](double s) {
      VectorXd a(3);
      a << -std::cos(s), -std::sin(s), 0.0;
      return a;
    };
    return spec;
  }
  if (name == "latitude_cylinder") {
    spec.epsilon = 1;
    spec.n = 2;
    spec.m = 2;
    spec.kind = RotationalKind::spherical_e1;
    spec.profile.s_lo = -1.0;
    spec.profile.s_hi = 1.0;
    spec.profile.value = [](double s) {
      VectorXd a(3);
      a << std::sin(1.0), std::cos(1.0), s;
      return a;
    };
    spec.profile.d1 = [](double) {
      VectorXd a(3);
      a << 0.0, 0.0, 1.0;
      return a;
    };
    spec.profile.d2 = [](double) { return VectorXd::Zero(3).eval(); };
    return spec;
  }
  throw OutOfDomain("unknown rotational fixture: " + name);
}

std::vector<std::string> rotational_fixture_names() {
  return {"spherical_e1", "spherical_em1", "hyperbolic",
          "parabolic",    "slice_sphere_polar", "latitude_cylinder"};
}

}  // namespace prodgeo
