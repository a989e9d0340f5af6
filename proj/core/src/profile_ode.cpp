#include "prodgeo/profile_ode.hpp"

#include <cmath>

#include "prodgeo/errors.hpp"
#include "prodgeo/numerics.hpp"

namespace prodgeo {

using Eigen::VectorXd;

ODEParams::ODEParams(double p_, double q_, double lo, double hi)
    : p(p_), q(q_), s_lo(lo), s_hi(hi) {
  if (p * p <= q) throw OutOfDomain("the equation needs p^2 > q");
  if (lo >= hi) throw OutOfDomain("empty working interval");
  for (int i = 0; i < 200; ++i) {
    const double s = lo + (hi - lo) * i / 199.0;
    if (W(s) <= 1e-3) throw IntervalLeavesDomain("working interval touches a quartic root");
  }
}

double ode_residual(const ODEParams& par, const C2Scalar& fn, double s) {
  const double f = fn.f(s), df = fn.d1(s), ddf = fn.d2(s);
  return s * par.W(s) * ddf + (s * s * s * s - par.p * par.p + par.q) * df - s * s * s * f;
}

SolutionBasis closed_form_basis(const ODEParams& par) {
  const double p = par.p, q = par.q;
  if (q < 0.0) throw BranchUnavailable("no logarithmic primitive for q < 0");
  if (q > 0.0 && p <= 0.0) throw BranchUnavailable("no logarithmic primitive for p <= 0");
  // The closed form lives inside the central window s^2 < p - sqrt(q).
  const double edge = p - std::sqrt(q);
  if (edge <= 0.0 || std::max(par.s_lo * par.s_lo, par.s_hi * par.s_hi) >= edge)
    throw BranchUnavailable("working interval escapes the central window");

  auto base = [p, q](double s) {
    const double u = p - s * s;
    if (q == 0.0) return std::sqrt(u);
    return std::sqrt(u + std::sqrt(u * u - q));  // the height function
  };
  // rho_- = exp(-F) = base, rho_+ = exp(F) = 1/base, with F' = beta.
  SolutionBasis out;
  out.rho_minus.f = [base](double s) { return base(s); };
  out.rho_minus.d1 = [base, par](double s) { return -par.beta(s) * base(s); };
  out.rho_minus.d2 = [base, par](double s) {
    const double b = par.beta(s);
    return (-par.beta_d1(s) + b * b) * base(s);
  };
  out.rho_plus.f = [base](double s) { return 1.0 / base(s); };
  out.rho_plus.d1 = [base, par](double s) { return par.beta(s) / base(s); };
  out.rho_plus.d2 = [base, par](double s) {
    const double b = par.beta(s);
    return (par.beta_d1(s) + b * b) / base(s);
  };

  for (int i = 0; i < 50; ++i) {
    const double s = par.s_lo + (par.s_hi - par.s_lo) * i / 49.0;
    if (std::abs(out.rho_plus.f(s) * out.rho_minus.f(s) - 1.0) > 1e-12)
      throw Error("solution basis lost the reciprocal identity");
    if (std::abs(ode_residual(par, out.rho_plus, s)) > 1e-8 ||
        std::abs(ode_residual(par, out.rho_minus, s)) > 1e-8)
      throw Error("closed-form pair fails the equation beyond tolerance");
  }
  return out;
}

double wronskian(const SolutionBasis& basis, double s) {
  return basis.rho_plus.f(s) * basis.rho_minus.d1(s) -
         basis.rho_plus.d1(s) * basis.rho_minus.f(s);
}

IntegratedSolution integrate_ode(const ODEParams& par, double f0, double df0, double a,
                                 double b) {
  const double lo = std::min(a, b), hi = std::max(a, b);
  if (lo < par.s_lo - 1e-12 || hi > par.s_hi + 1e-12)
    throw IntervalLeavesDomain("integration interval escapes the working interval");
  if (lo <= 1e-3 && hi >= -1e-3)
    throw IntervalLeavesDomain("leading coefficient vanishes at s = 0 inside the interval");

  auto rhs = [&par](double s, double f, double df) {
    const double num = s * s * s * f - (s * s * s * s - par.p * par.p + par.q) * df;
    return num / (s * par.W(s));
  };
  auto run = [&](int steps, IntegratedSolution* record) {
    const double h = (b - a) / steps;
    double s = a, f = f0, df = df0;
    if (record) {
      record->s.push_back(s);
      record->f.push_back(f);
      record->df.push_back(df);
    }
    for (int i = 0; i < steps; ++i) {
      const double k1f = df, k1d = rhs(s, f, df);
      const double k2f = df + 0.5 * h * k1d, k2d = rhs(s + 0.5 * h, f + 0.5 * h * k1f, df + 0.5 * h * k1d);
      const double k3f = df + 0.5 * h * k2d, k3d = rhs(s + 0.5 * h, f + 0.5 * h * k2f, df + 0.5 * h * k2d);
      const double k4f = df + h * k3d, k4d = rhs(s + h, f + h * k3f, df + h * k3d);
      f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
      df += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
      s = a + (i + 1) * h;
      if (record) {
        record->s.push_back(s);
        record->f.push_back(f);
        record->df.push_back(df);
      }
    }
    return f;
  };

  int steps = 64;
  double prev = run(steps, nullptr);
  double delta = 0.0;
  while (steps < (1 << 20)) {
    const double next = run(2 * steps, nullptr);
    delta = std::abs(next - prev);
    prev = next;
    steps *= 2;
    if (delta < 1e-9) break;
  }
  IntegratedSolution out;
  out.steps = steps;
  out.richardson_delta = delta;
  run(steps, &out);
  return out;
}

ReconstructedProfile reconstruct_alpha(const FamilyParams& fp, double theta, int sign) {
  if (sign != 1 && sign != -1) throw OutOfDomain("branch sign must be +1 or -1");
  const double p = fp.p, q = fp.q;
  const double cross = std::sqrt(std::max(q - (p - 1.0) * (p - 1.0), 0.0));
  const double ct = std::cos(theta), st = std::sin(theta);
  const double rt2 = std::sqrt(2.0);

  ReconstructedProfile prof;
  prof.p = p;
  prof.q = q;
  prof.theta = theta;
  prof.sign = sign;

  auto h = [fp](double s) { return h_pq(fp, s); };
  auto dh = [fp](double s) { return h_pq_d1(fp, s); };
  auto ddh = [fp](double s) { return h_pq_d2(fp, s); };
  auto beta = [p, q](double s) {
    const double u = s * s - p;
    return s / std::sqrt(u * u - q);
  };
  auto dbeta = [p, q](double s) {
    const double u = s * s - p;
    const double w = std::sqrt(u * u - q);
    return 1.0 / w - 2.0 * s * s * u / (w * w * w);
  };

  // Transverse pair: (G, K) rotated by theta, G = h + (1-p)/h, K = cross / h.
  auto G = [h, p](double s) { return h(s) + (1.0 - p) / h(s); };
  auto dG = [h, dh, p](double s) {
    return dh(s) * (1.0 - (1.0 - p) / (h(s) * h(s)));
  };
  auto ddG = [h, dh, ddh, p](double s) {
    const double hs = h(s), d = dh(s);
    return ddh(s) * (1.0 - (1.0 - p) / (hs * hs)) + 2.0 * (1.0 - p) * d * d / (hs * hs * hs);
  };
  auto K = [h, cross](double s) { return cross / h(s); };
  auto dK = [h, dh, cross](double s) { return -cross * dh(s) / (h(s) * h(s)); };
  auto ddK = [h, dh, ddh, cross](double s) {
    const double hs = h(s), d = dh(s);
    return cross * (2.0 * d * d / (hs * hs * hs) - ddh(s) / (hs * hs));
  };

  const double sgn = double(sign);
  prof.value = [G, K, beta, ct, st, sgn, rt2](double s) {
    VectorXd a(4);
    a[0] = s;
    a[1] = (G(s) * ct - sgn * K(s) * st) / rt2;
    a[2] = (G(s) * st + sgn * K(s) * ct) / rt2;
    a[3] = -sgn * adaptive_simpson(beta, 0.0, s, 1e-10);
    return a;
  };
  prof.d1 = [dG, dK, beta, ct, st, sgn, rt2](double s) {
    VectorXd a(4);
    a[0] = 1.0;
    a[1] = (dG(s) * ct - sgn * dK(s) * st) / rt2;
    a[2] = (dG(s) * st + sgn * dK(s) * ct) / rt2;
    a[3] = -sgn * beta(s);
    return a;
  };
  prof.d2 = [ddG, ddK, dbeta, ct, st, sgn, rt2](double s) {
    VectorXd a(4);
    a[0] = 0.0;
    a[1] = (ddG(s) * ct - sgn * ddK(s) * st) / rt2;
    a[2] = (ddG(s) * st + sgn * ddK(s) * ct) / rt2;
    a[3] = -sgn * dbeta(s);
    return a;
  };

  // Sphere-factor constraint of the reconstructed curve.
  const double w = fp.half_width() * (1.0 - 1e-3);
  for (int i = 0; i < 50; ++i) {
    const double s = -w + 2.0 * w * i / 49.0;
    const VectorXd a = prof.value(s);
    if (std::abs(s * s + a[1] * a[1] + a[2] * a[2] - 1.0) > 1e-9)
      throw Error("reconstructed profile left the unit sphere");
  }
  return prof;
}

double varphi(double p, double q, double s) {
  if (p * p <= q) throw OutOfDomain("the squared-speed function needs p^2 > q");
  const double u = s * s - p;
  const double W = u * u - q;
  if (W <= 0.0) throw OutOfInterval("squared-speed pole");
  return (p * p - q) / W;
}

double varphi_d1(double p, double q, double s) {
  const double u = s * s - p;
  const double W = u * u - q;
  if (W <= 0.0) throw OutOfInterval("squared-speed pole");
  return -(p * p - q) * 4.0 * s * u / (W * W);
}

double arclength(const FamilyParams& fp, double t, double abs_tol) {
  if (std::abs(t) >= fp.half_width()) throw OutOfInterval("arc length beyond the interval");
  const double p = fp.p, q = fp.q;
  return adaptive_simpson([p, q](double s) { return std::sqrt(varphi(p, q, s)); }, 0.0, t,
                          abs_tol);
}

double warping_distance(const FamilyParams& a, const FamilyParams& b, int grid_points) {
  const double w = std::min(a.half_width(), b.half_width()) * (1.0 - 1e-3);
  double worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double s = -w + 2.0 * w * i / (grid_points - 1.0);
    worst = std::max(worst, std::abs(varphi(a.p, a.q, s) - varphi(b.p, b.q, s)));
  }
  return worst;
}

double umbilical_condition_residual(const ReconstructedProfile& prof, double s) {
  const VectorXd a = prof.value(s);
  const VectorXd a1 = prof.d1(s);
  const VectorXd a2 = prof.d2(s);
  const double phi = a1.squaredNorm();
  const double dphi = 2.0 * a1.dot(a2);
  VectorXd e0 = VectorXd::Zero(4);
  e0[0] = 1.0;
  VectorXd abar = a;
  abar[3] = 0.0;
  const VectorXd res = 2.0 * phi * a[0] * a2 + 2.0 * phi * phi * e0 -
                       (a[0] * dphi + 2.0 * phi * a1[0]) * a1 -
                       2.0 * phi * a[0] * a1[3] * a1[3] * abar;
  return res.cwiseAbs().maxCoeff();
}

}  // namespace prodgeo
