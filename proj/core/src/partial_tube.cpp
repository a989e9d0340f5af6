#include "prodgeo/partial_tube.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "jets.hpp"
#include "prodgeo/errors.hpp"

namespace prodgeo {

using detail::Mat;
using detail::Vec;

double CurveAlpha::fiber_inner(const Vec& a, const Vec& b) const {
  if (fiber == FiberKind::round) {
    double s = epsilon * a[0] * b[0];
    for (int i = 1; i <= k + 1; ++i) s += a[i] * b[i];
    return s;
  }
  // Null pair (slot 0, slot k) with unit pairing, middle block orthonormal.
  double s = a[0] * b[k] + a[k] * b[0] + a[k + 1] * b[k + 1];
  for (int i = 1; i < k; ++i) s += a[i] * b[i];
  return s;
}

double CurveAlpha::constraint_residual(int samples) const {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = s_lo + (s_hi - s_lo) * double(i) / (samples - 1);
    const Vec a = value(s);
    double c;
    if (fiber == FiberKind::round) {
      c = epsilon * a[0] * a[0] - epsilon;
      for (int j = 1; j <= k; ++j) c += a[j] * a[j];
    } else {
      c = 2.0 * a[0] * a[k] + 1.0;
      for (int j = 1; j < k; ++j) c += a[j] * a[j];
    }
    worst = std::max(worst, std::abs(c));
  }
  return worst;
}

namespace {

Vec position_of(const ParallelFrame& f, const Vec& x) { return f.base.eval(x); }

}  // namespace

FrameValidation validate_frame(const ParallelFrame& frame, int samples_per_axis,
                               const FdConfig& cfg) {
  FrameValidation out;
  const AmbientSpace& amb = frame.base.ambient;
  const int k = frame.k();
  const auto pts = interior_grid(frame.base.domain, samples_per_axis, 1e-2);
  const int mb = frame.base.m;

  for (const Vec& x : pts) {
    const Vec pos = position_of(frame, x);
    Mat tang(amb.total_dim(), mb);
    for (int i = 0; i < mb; ++i)
      tang.col(i) = detail::d1(frame.base, x, i, cfg.step(cfg.first_step, x[i]));

    std::vector<Vec> xi(k);
    for (int a = 0; a < k; ++a) xi[size_t(a)] = frame.sections[size_t(a)](x);

    // Gram pattern per fiber kind, including the position vector.
    auto gram_target = [&](int a, int b) {
      if (frame.fiber == FiberKind::round) return a == b ? 1.0 : 0.0;
      // lightcone: last section is null
      if (a == k - 1 && b == k - 1) return 0.0;
      return a == b ? 1.0 : 0.0;
    };
    for (int a = 0; a < k; ++a) {
      for (int b = a; b < k; ++b)
        out.orthonormality = std::max(
            out.orthonormality, std::abs(amb.inner(xi[size_t(a)], xi[size_t(b)]) -
                                         gram_target(a, b)));
      const double pos_pair = frame.fiber == FiberKind::lightcone && a == k - 1 ? 1.0 : 0.0;
      out.orthonormality = std::max(
          out.orthonormality, std::abs(amb.inner(xi[size_t(a)], pos) - pos_pair));
      for (int i = 0; i < mb; ++i)
        out.orthonormality =
            std::max(out.orthonormality, std::abs(amb.inner(xi[size_t(a)], tang.col(i))));
      out.orthonormality =
          std::max(out.orthonormality, std::abs(amb.inner(xi[size_t(a)], amb.vertical())));
    }
    const double pos_sq = frame.fiber == FiberKind::round ? double(amb.epsilon) : 0.0;
    out.orthonormality =
        std::max(out.orthonormality, std::abs(amb.inner(pos, pos) - pos_sq));

    // Parallelism: section derivatives must stay in span{tangents, position}.
    Mat V(amb.total_dim(), mb + 1);
    V.leftCols(mb) = tang;
    V.col(mb) = pos;
    const Mat proj = V * (V.transpose() * V).inverse() * V.transpose();
    for (int a = 0; a < k; ++a)
      for (int i = 0; i < mb; ++i) {
        const double h = cfg.step(cfg.second_step, x[i]);
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const Vec dxi =
            (frame.sections[size_t(a)](xp) - frame.sections[size_t(a)](xm)) / (2.0 * h);
        out.parallelism =
            std::max(out.parallelism, (dxi - proj * dxi).cwiseAbs().maxCoeff());
      }
  }
  return out;
}

Chart tube_chart_unchecked(const PartialTubeSpec& spec) {
  const ParallelFrame& frame = spec.frame;
  const CurveAlpha& curve = spec.curve;
  Chart chart;
  chart.ambient = frame.base.ambient;
  chart.m = frame.base.m + 1;
  const int mb = frame.base.m;
  const int k = curve.k;
  Box dom;
  dom.lo = Vec(chart.m);
  dom.hi = Vec(chart.m);
  dom.lo.head(mb) = frame.base.domain.lo;
  dom.hi.head(mb) = frame.base.domain.hi;
  dom.lo[mb] = curve.s_lo;
  dom.hi[mb] = curve.s_hi;
  chart.domain = dom;
  chart.label = "tube over " + frame.base.label;

  auto base_eval = frame.base.eval;
  auto sections = frame.sections;
  auto curve_value = curve.value;
  const Vec vertical = chart.ambient.vertical();
  chart.eval = [base_eval, sections, curve_value, vertical, mb, k](const Vec& u) {
    const Vec x = u.head(mb);
    const double s = u[mb];
    const Vec a = curve_value(s);
    Vec pt = a[0] * base_eval(x);
    for (int i = 1; i <= k; ++i) pt += a[i] * sections[size_t(i - 1)](x);
    pt += a[k + 1] * vertical;
    return pt;
  };
  return chart;
}

Chart build_tube(const PartialTubeSpec& spec, const FdConfig& cfg) {
  if (spec.curve.k != spec.frame.k())
    throw WrongDimension("curve and frame disagree on the number of sections");
  if (spec.curve.fiber != spec.frame.fiber)
    throw KindMismatch("curve and frame disagree on the fiber kind");
  if (spec.curve.epsilon != spec.frame.base.ambient.epsilon)
    throw KindMismatch("curve and base disagree on the ambient signature");
  if (spec.curve.constraint_residual() > 1e-10)
    throw ConstraintViolated("profile curve violates its quadric constraint");
  if (spec.curve.require_vertical_regular) {
    for (int i = 0; i < 50; ++i) {
      const double s = spec.curve.s_lo + (spec.curve.s_hi - spec.curve.s_lo) * i / 49.0;
      if (std::abs(spec.curve.d1(s)[spec.curve.k + 1]) < 1e-12)
        throw ConstraintViolated("vertical component of the profile has a critical point");
    }
  }
  const FrameValidation v = validate_frame(spec.frame, 5, cfg);
  if (v.orthonormality > 1e-8 || v.parallelism > 1e-7)
    throw FrameNotParallel("normal sections fail the orthonormal-parallel test");
  return tube_chart_unchecked(spec);
}

namespace {

Mat p_matrix(const PartialTubeSpec& spec, const Vec& x, double s, const FdConfig& cfg) {
  if (spec.frame.fiber != FiberKind::round)
    throw KindMismatch("closed forms require an orthonormal fiber frame");
  const int mb = spec.frame.base.m;
  const Vec a = spec.curve.value(s);
  Mat P = a[0] * Mat::Identity(mb, mb);
  for (int i = 1; i <= spec.curve.k; ++i) {
    const Vec xi = spec.frame.sections[size_t(i - 1)](x);
    P -= a[i] * shape_operator(spec.frame.base, x, xi, cfg);
  }
  return P;
}

}  // namespace

Regularity regularity(const PartialTubeSpec& spec, const Vec& x, double s, const FdConfig& cfg) {
  const Mat P = p_matrix(spec, x, s, cfg);
  Regularity r;
  r.det = P.determinant();
  r.regular = std::abs(r.det) > 1e-10;
  return r;
}

std::vector<std::pair<double, double>> regular_intervals(const PartialTubeSpec& spec,
                                                         const Vec& x, double margin,
                                                         const FdConfig& cfg) {
  const int samples = 200;
  const double lo = spec.curve.s_lo, hi = spec.curve.s_hi;
  auto det_at = [&](double s) { return p_matrix(spec, x, s, cfg).determinant(); };

  std::vector<double> roots;
  double prev_s = lo, prev_d = det_at(lo);
  for (int i = 1; i < samples; ++i) {
    const double s = lo + (hi - lo) * i / (samples - 1.0);
    const double d = det_at(s);
    if (prev_d == 0.0 || (prev_d < 0) != (d < 0)) {
      double a = prev_s, b = s;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        if ((det_at(a) < 0) != (det_at(mid) < 0))
          b = mid;
        else
          a = mid;
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_s = s;
    prev_d = d;
  }

  std::vector<std::pair<double, double>> out;
  double start = lo;
  for (double r : roots) {
    if (r - margin > start) out.emplace_back(start, r - margin);
    start = r + margin;
  }
  if (start < hi) out.emplace_back(start, hi);
  return out;
}

Eigen::MatrixXd tube_shape_closed_form(const PartialTubeSpec& spec, const Vec& x, double s,
                                       const Vec& xi, const FdConfig& cfg) {
  const AmbientSpace& amb = spec.frame.base.ambient;
  const int mb = spec.frame.base.m;
  const int k = spec.curve.k;

  const Mat P = p_matrix(spec, x, s, cfg);
  if (std::abs(P.determinant()) <= 1e-10)
    throw SingularP("tube is not immersed at the requested point");

  const Mat Axi = shape_operator(spec.frame.base, x, xi, cfg);
  const Mat horizontal = P.partialPivLu().solve(Axi);

  // Fiber components of xi relative to (position, sections, vertical).
  Vec zeta(k + 2);
  zeta[0] = double(amb.epsilon) * amb.inner(xi, spec.frame.base.eval(x));
  for (int i = 1; i <= k; ++i) zeta[i] = amb.inner(xi, spec.frame.sections[size_t(i - 1)](x));
  zeta[k + 1] = amb.inner(xi, amb.vertical());

  const Vec a1 = spec.curve.d1(s);
  const Vec a2 = spec.curve.d2(s);
  const double lambda = spec.curve.fiber_inner(a2, zeta) / spec.curve.fiber_inner(a1, a1);

  Mat A = Mat::Zero(mb + 1, mb + 1);
  A.topLeftCorner(mb, mb) = horizontal;
  A(mb, mb) = lambda;
  return A;
}

TubeTField tube_T_field(const PartialTubeSpec& spec, const Vec& x, double s,
                        const FdConfig& cfg) {
  TubeTField out;
  const Vec a1 = spec.curve.d1(s);
  out.t_coeff = a1[spec.curve.k + 1] / spec.curve.fiber_inner(a1, a1);

  const Chart chart = tube_chart_unchecked(spec);
  Vec u(chart.m);
  u.head(chart.m - 1) = x;
  u[chart.m - 1] = s;
  try {
    const FrameData F = frame_at(chart, u, cfg);
    const Vec numeric_T = F.tangent * F.T;
    const Vec closed_T = out.t_coeff * F.tangent.col(chart.m - 1);
    out.frame_deviation = (numeric_T - closed_T).cwiseAbs().maxCoeff();
  } catch (const SingularMetric&) {
    // Collapsed parametrization: the coefficient is still well defined.
  }
  return out;
}

}  // namespace prodgeo
