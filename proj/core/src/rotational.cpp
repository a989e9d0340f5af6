#include "prodgeo/rotational.hpp"

#include <cmath>

#include "jets.hpp"
#include "prodgeo/errors.hpp"

namespace prodgeo {

using detail::Mat;
using detail::Vec;

FactorParam sphere_factor(int d, double margin) {
  FactorParam f;
  f.domain.lo = Vec(d);
  f.domain.hi = Vec(d);
  for (int i = 0; i < d - 1; ++i) {
    f.domain.lo[i] = margin;
    f.domain.hi[i] = M_PI - margin;
  }
  f.domain.lo[d - 1] = margin;
  f.domain.hi[d - 1] = 2.0 * M_PI - margin;
  f.map = [d](const Vec& t) {
    Vec x(d + 1);
    double prod = 1.0;
    for (int i = 0; i < d; ++i) {
      x[i] = prod * std::cos(t[i]);
      prod *= std::sin(t[i]);
    }
    x[d] = prod;
    return x;
  };
  return f;
}

FactorParam hyperbolic_factor(int d, double margin) {
  FactorParam f;
  if (d == 1) {
    f.domain = Box::of({-1.2}, {1.2});
    f.map = [](const Vec& t) {
      Vec x(2);
      x << std::cosh(t[0]), std::sinh(t[0]);
      return x;
    };
    return f;
  }
  FactorParam angles = sphere_factor(d - 1, margin);
  f.domain.lo = Vec(d);
  f.domain.hi = Vec(d);
  f.domain.lo[0] = 0.05;
  f.domain.hi[0] = 1.2;
  f.domain.lo.tail(d - 1) = angles.domain.lo;
  f.domain.hi.tail(d - 1) = angles.domain.hi;
  auto sphere = angles.map;
  f.map = [d, sphere](const Vec& t) {
    Vec x(d + 1);
    x[0] = std::cosh(t[0]);
    x.tail(d) = std::sinh(t[0]) * sphere(t.tail(d - 1));
    return x;
  };
  return f;
}

FactorParam flat_factor(int d) {
  FactorParam f;
  f.domain.lo = Vec::Constant(d, -1.0);
  f.domain.hi = Vec::Constant(d, 1.0);
  f.map = [](const Vec& t) { return t; };
  return f;
}

namespace {

FactorParam default_factor(RotationalKind kind, int m) {
  switch (kind) {
    case RotationalKind::spherical_e1:
    case RotationalKind::spherical_em1:
      return sphere_factor(m - 1);
    case RotationalKind::hyperbolic:
      return hyperbolic_factor(m - 1);
    case RotationalKind::parabolic:
      return flat_factor(m - 1);
  }
  throw KindMismatch("unknown rotational kind");
}

void check_kind_signature(const RotationalSpec& spec) {
  const bool needs_plus = spec.kind == RotationalKind::spherical_e1;
  if (needs_plus && spec.epsilon != 1)
    throw KindMismatch("this axis kind needs the spherical ambient");
  if (!needs_plus && spec.epsilon != -1)
    throw KindMismatch("this axis kind needs the hyperbolic ambient");
}

}  // namespace

double profile_constraint_residual(const RotationalSpec& spec, int samples) {
  const int kprof = spec.n - spec.m + 1;  // profile components a_0..a_kprof
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s =
        spec.profile.s_lo + (spec.profile.s_hi - spec.profile.s_lo) * i / (samples - 1.0);
    const Vec a = spec.profile.value(s);
    double c = 0.0;
    switch (spec.kind) {
      case RotationalKind::spherical_e1:
        c = -1.0;
        for (int j = 0; j <= kprof; ++j) c += a[j] * a[j];
        break;
      case RotationalKind::spherical_em1:
      case RotationalKind::hyperbolic:
        c = 1.0 - a[0] * a[0];
        for (int j = 1; j <= kprof; ++j) c += a[j] * a[j];
        break;
      case RotationalKind::parabolic:
        c = 1.0 + 2.0 * a[0] * a[kprof];
        for (int j = 1; j < kprof; ++j) c += a[j] * a[j];
        break;
    }
    worst = std::max(worst, std::abs(c));
  }
  return worst;
}

Chart rotational_chart(const RotationalSpec& spec_in) {
  RotationalSpec spec = spec_in;
  check_kind_signature(spec);
  if (!spec.factor.map) spec.factor = default_factor(spec.kind, spec.m);
  if (profile_constraint_residual(spec) > 1e-10)
    throw ConstraintViolated("rotational profile violates its quadric constraint");

  const int n = spec.n, m = spec.m;
  const int kprof = n - m + 1;
  Chart chart;
  chart.ambient = {spec.epsilon, n};
  chart.m = m;
  chart.domain.lo = Vec(m);
  chart.domain.hi = Vec(m);
  chart.domain.lo.head(m - 1) = spec.factor.domain.lo;
  chart.domain.hi.head(m - 1) = spec.factor.domain.hi;
  chart.domain.lo[m - 1] = spec.profile.s_lo;
  chart.domain.hi[m - 1] = spec.profile.s_hi;

  auto factor = spec.factor.map;
  auto prof = spec.profile.value;
  const RotationalKind kind = spec.kind;
  chart.eval = [factor, prof, kind, n, m, kprof](const Vec& u) {
    const Vec t = u.head(m - 1);
    const double s = u[m - 1];
    const Vec a = prof(s);
    Vec x = Vec::Zero(n + 2);
    switch (kind) {
      case RotationalKind::spherical_e1: {
        const Vec phi = factor(t);
        x.head(m) = a[0] * phi;
        for (int i = 1; i <= kprof; ++i) x[m - 1 + i] = a[i];
        break;
      }
      case RotationalKind::spherical_em1: {
        const Vec phi = factor(t);
        x[0] = a[0];
        x.segment(1, m) = a[1] * phi;
        for (int i = 2; i <= kprof; ++i) x[m - 1 + i] = a[i];
        break;
      }
      case RotationalKind::hyperbolic: {
        const Vec phi = factor(t);
        x.head(m) = a[0] * phi;
        for (int i = 1; i <= kprof; ++i) x[m - 1 + i] = a[i];
        break;
      }
      case RotationalKind::parabolic: {
        // Coefficients on the degenerate-axis basis, then back to standard.
        Vec c = Vec::Zero(n + 2);
        c[0] = a[0];
        for (int j = 1; j < m; ++j) c[j] = a[0] * t[j - 1];
        for (int i = 1; i < kprof; ++i) c[m - 1 + i] = a[i];
        c[n] = a[kprof] - 0.5 * a[0] * t.squaredNorm();
        const double rt2 = std::sqrt(2.0);
        x = c;
        x[0] = (-c[0] + c[n]) / rt2;
        x[n] = (c[0] + c[n]) / rt2;
        break;
      }
    }
    x[n + 1] = a[kprof + 1];
    return x;
  };
  std::string kname;
  switch (kind) {
    case RotationalKind::spherical_e1: kname = "spherical"; break;
    case RotationalKind::spherical_em1: kname = "spherical"; break;
    case RotationalKind::hyperbolic: kname = "hyperbolic"; break;
    case RotationalKind::parabolic: kname = "parabolic"; break;
  }
  chart.label = "rotational (" + kname + ")";
  return chart;
}

double geodesic_circle_residual(const Chart& base_curve, double t, const FdConfig& cfg) {
  if (base_curve.m != 1) throw WrongDimension("geodesic-circle check expects a curve chart");
  Vec u(1);
  u << t;
  const AmbientSpace& amb = base_curve.ambient;
  const Vec g1 = detail::d1(base_curve, u, 0, cfg.step(cfg.first_step, t));
  const Vec g2 = detail::d2_diag(base_curve, u, detail::ev(base_curve, u), 0,
                                 cfg.step(cfg.second_step, t));
  const Vec g3 = detail::d3(base_curve, u, 0, 0, 0, cfg.step(cfg.third_step, t));
  const double c = std::sqrt(amb.inner(g1, g1));
  const double c2 = c * c, c3 = c2 * c, c4 = c2 * c2;
  double r = (g3 / c3 + amb.inner(g2, g2) / c4 * (g1 / c)).cwiseAbs().maxCoeff();
  r = std::max(r, std::abs(amb.inner(g2, g1)) / c3);  // constant-speed check
  return r;
}

PartialTubeSpec rotational_as_tube(const RotationalSpec& spec_in, bool allow_hyperbolic,
                                   double spherical_base_radius) {
  RotationalSpec spec = spec_in;
  check_kind_signature(spec);
  if (!spec.factor.map) spec.factor = default_factor(spec.kind, spec.m);
  if (spec.kind == RotationalKind::hyperbolic && !allow_hyperbolic)
    throw KindMismatch(
        "the hyperbolic-axis tube presentation uses an equidistant base; pass "
        "allow_hyperbolic to accept it");

  const int n = spec.n, m = spec.m;
  const int k = n - m + 1;
  const int dim = n + 2;
  auto factor = spec.factor.map;

  PartialTubeSpec tube;
  tube.frame.base.ambient = {spec.epsilon, n};
  tube.frame.base.m = m - 1;
  tube.frame.base.domain = spec.factor.domain;
  tube.curve.k = k;
  tube.curve.epsilon = spec.epsilon;
  tube.curve.s_lo = spec.profile.s_lo;
  tube.curve.s_hi = spec.profile.s_hi;

  auto unit_vec = [dim](int i) {
    Vec e = Vec::Zero(dim);
    e[i] = 1.0;
    return e;
  };

  switch (spec.kind) {
    case RotationalKind::spherical_e1: {
      tube.frame.base.eval = [factor, dim, m](const Vec& t) {
        Vec x = Vec::Zero(dim);
        x.head(m) = factor(t);
        return x;
      };
      tube.frame.base.label = "totally geodesic sphere";
      for (int i = 1; i <= k; ++i) {
        const Vec e = unit_vec(m - 1 + i);
        tube.frame.sections.push_back([e](const Vec&) { return e; });
      }
      tube.curve.value = spec.profile.value;
      tube.curve.d1 = spec.profile.d1;
      tube.curve.d2 = spec.profile.d2;
      break;
    }
    case RotationalKind::spherical_em1: {
      const double ch = std::cosh(spherical_base_radius);
      const double sh = std::sinh(spherical_base_radius);
      tube.frame.base.eval = [factor, dim, m, ch, sh](const Vec& t) {
        Vec x = Vec::Zero(dim);
        x[0] = ch;
        x.segment(1, m) = sh * factor(t);
        return x;
      };
      tube.frame.base.label = "geodesic sphere";
      tube.frame.sections.push_back([factor, dim, m, ch, sh](const Vec& t) {
        Vec x = Vec::Zero(dim);
        x[0] = sh;
        x.segment(1, m) = ch * factor(t);
        return x;
      });
      for (int i = 2; i <= k; ++i) {
        const Vec e = unit_vec(m - 1 + i);
        tube.frame.sections.push_back([e](const Vec&) { return e; });
      }
      auto boost = [ch, sh, k](Vec a) {
        const double b0 = ch * a[0] - sh * a[1];
        const double b1 = ch * a[1] - sh * a[0];
        a[0] = b0;
        a[1] = b1;
        return a;
      };
      auto v = spec.profile.value, dv = spec.profile.d1, ddv = spec.profile.d2;
      tube.curve.value = [v, boost](double s) { return boost(v(s)); };
      tube.curve.d1 = [dv, boost](double s) { return boost(dv(s)); };
      tube.curve.d2 = [ddv, boost](double s) { return boost(ddv(s)); };
      break;
    }
    case RotationalKind::hyperbolic: {
      tube.frame.base.eval = [factor, dim, m](const Vec& t) {
        Vec x = Vec::Zero(dim);
        x.head(m) = factor(t);
        return x;
      };
      tube.frame.base.label = "totally geodesic hyperbolic sheet";
      for (int i = 1; i <= k; ++i) {
        const Vec e = unit_vec(m - 1 + i);
        tube.frame.sections.push_back([e](const Vec&) { return e; });
      }
      tube.curve.value = spec.profile.value;
      tube.curve.d1 = spec.profile.d1;
      tube.curve.d2 = spec.profile.d2;
      break;
    }
    case RotationalKind::parabolic: {
      tube.frame.fiber = FiberKind::lightcone;
      tube.curve.fiber = FiberKind::lightcone;
      const double rt2 = std::sqrt(2.0);
      tube.frame.base.eval = [dim, m, n, rt2](const Vec& t) {
        // ghat = e^_0 + sum t_j e^_j - (|t|^2/2) e^_n in standard coordinates
        Vec x = Vec::Zero(dim);
        const double cn = -0.5 * t.squaredNorm();
        x[0] = (-1.0 + cn) / rt2;
        x[n] = (1.0 + cn) / rt2;
        for (int j = 1; j < m; ++j) x[j] = t[j - 1];
        return x;
      };
      tube.frame.base.label = "light-cone flat sheet";
      for (int i = 1; i < k; ++i) {
        const Vec e = unit_vec(m - 1 + i);
        tube.frame.sections.push_back([e](const Vec&) { return e; });
      }
      Vec en_hat = Vec::Zero(dim);
      en_hat[0] = 1.0 / rt2;
      en_hat[n] = 1.0 / rt2;
      tube.frame.sections.push_back([en_hat](const Vec&) { return en_hat; });
      tube.curve.value = spec.profile.value;
      tube.curve.d1 = spec.profile.d1;
      tube.curve.d2 = spec.profile.d2;
      break;
    }
  }

  if (m == 2 && spec.kind != RotationalKind::parabolic) {
    const Box& bd = tube.frame.base.domain;
    for (double f : {0.25, 0.5, 0.75}) {
      const double t = bd.lo[0] + f * (bd.hi[0] - bd.lo[0]);
      if (geodesic_circle_residual(tube.frame.base, t) > 1e-3)
        throw ConstraintViolated("tube base curve is not a geodesic circle");
    }
  }
  return tube;
}

}  // namespace prodgeo
