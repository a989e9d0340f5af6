#include "prodgeo/geometry.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "jets.hpp"
#include "prodgeo/errors.hpp"

namespace prodgeo {

using detail::Mat;
using detail::Vec;

FrameData frame_at(const Chart& chart, const Vec& u, const FdConfig& cfg) {
  const AmbientSpace& amb = chart.ambient;
  if (u.size() != chart.m) throw WrongDimension("parameter dimension does not match chart");
  FrameData F;
  F.point = detail::ev(chart, u);
  if (amb.surface_residual(F.point) > cfg.surface_guard)
    throw OffSurface("chart point violates the product-space constraint: " + chart.label);
  if (amb.epsilon == -1 && F.point[0] <= 0.0)
    throw OffSurface("chart point is on the wrong sheet of the quadric: " + chart.label);

  const int m = chart.m;
  const int dim = amb.total_dim();
  F.tangent = Mat(dim, m);
  for (int i = 0; i < m; ++i)
    F.tangent.col(i) = detail::d1(chart, u, i, cfg.step(cfg.first_step, u[i]));

  F.metric = Mat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      F.metric(i, j) = F.metric(j, i) = amb.inner(F.tangent.col(i), F.tangent.col(j));

  Eigen::SelfAdjointEigenSolver<Mat> es(F.metric);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (lmin <= 0.0 || lmax / lmin > 1e10)
    throw SingularMetric("induced metric is near-degenerate at an evaluation point of " +
                         chart.label);

  F.nu = amb.horizontal(F.point);

  Mat seeds(dim, m + 1);
  seeds.leftCols(m) = F.tangent;
  seeds.col(m) = F.nu;
  PseudoFrame pf = pseudo_orthonormalize(amb, seeds);
  F.normal = complete_frame(amb, pf, amb.n + 1 - m);

  Vec rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = F.tangent(dim - 1, i);  // <t_i, d/dt>
  F.T = F.metric.llt().solve(rhs);
  F.eta = amb.vertical() - F.tangent * F.T;
  return F;
}

Eigen::MatrixXd shape_operator(const Chart& chart, const Vec& u, const Vec& direction,
                               const FdConfig& cfg) {
  const FrameData F = frame_at(chart, u, cfg);
  const auto S = detail::second_jet(chart, u, F.point, cfg);
  const int m = chart.m;
  Mat M(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M(i, j) = chart.ambient.inner(S[i][j], direction);
  return F.metric.llt().solve(M);
}

FundamentalData fundamental_at(const Chart& chart, const Vec& u, const FdConfig& cfg) {
  FundamentalData fd;
  fd.frame = frame_at(chart, u, cfg);
  const FrameData& F = fd.frame;
  const AmbientSpace& amb = chart.ambient;
  const int m = chart.m;
  const int k = F.codim();

  const auto S = detail::second_jet(chart, u, F.point, cfg);
  const auto llt = F.metric.llt();
  fd.alpha.resize(k);
  fd.shape.resize(k);
  fd.mean_curvature = Vec(k);
  for (int a = 0; a < k; ++a) {
    Mat A(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) A(i, j) = amb.inner(S[i][j], F.normal.col(a));
    fd.alpha[a] = A;
    fd.shape[a] = llt.solve(A);
    fd.mean_curvature[a] = fd.shape[a].trace() / m;
  }

  fd.normal_connection.resize(m);
  for (int i = 0; i < m; ++i) {
    const double h = cfg.step(cfg.second_step, u[i]);
    const FrameData Fp = frame_at(chart, detail::shifted(u, i, h), cfg);
    const FrameData Fm = frame_at(chart, detail::shifted(u, i, -h), cfg);
    Mat w(k, k);
    for (int a = 0; a < k; ++a) {
      const Vec dxi = (Fp.normal.col(a) - Fm.normal.col(a)) / (2.0 * h);
      for (int b = 0; b < k; ++b) w(a, b) = amb.inner(dxi, F.normal.col(b));
    }
    fd.normal_connection[i] = w;
  }
  return fd;
}

CompatibilityResiduals compatibility_residuals(const Chart& chart, const Vec& u,
                                               const FdConfig& cfg) {
  const detail::CompatJet J = detail::compat_jet(chart, u, cfg);
  const AmbientSpace& amb = chart.ambient;
  const double eps = double(amb.epsilon);
  const int m = chart.m;
  const int k = J.F.codim();
  const Mat& g = J.F.metric;

  const detail::Connection conn = detail::connection_from(amb, J, m);
  const auto& gamma = conn.gamma;
  const auto& dgamma = conn.dgamma;

  CompatibilityResiduals out;

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int kk = 0; kk < m; ++kk)
        for (int l = 0; l < m; ++l) {
          double lhs = dgamma[i][l](j, kk) - dgamma[j][l](i, kk);
          for (int r = 0; r < m; ++r)
            lhs += gamma[l](i, r) * gamma[r](j, kk) - gamma[l](j, r) * gamma[r](i, kk);
          const double del_li = l == i ? 1.0 : 0.0;
          const double del_lj = l == j ? 1.0 : 0.0;
          double rhs = eps * (g(j, kk) * del_li - g(i, kk) * del_lj -
                              J.T_low[j] * (J.T_low[kk] * del_li - g(i, kk) * J.F.T[l]) +
                              J.T_low[i] * (J.T_low[kk] * del_lj - g(j, kk) * J.F.T[l]));
          for (int a = 0; a < k; ++a)
            rhs += J.alpha[a](j, kk) * J.shape[a](l, i) - J.alpha[a](i, kk) * J.shape[a](l, j);
          out.gauss = std::max(out.gauss, std::abs(lhs - rhs));
        }

  auto cov_alpha = [&](int i, int j, int kk, int a) {
    double s = J.dalpha(amb, i, j, kk, a);
    for (int b = 0; b < k; ++b) s += J.alpha[b](j, kk) * J.omega[i](b, a);
    for (int r = 0; r < m; ++r)
      s -= gamma[r](i, j) * J.alpha[a](r, kk) + gamma[r](i, kk) * J.alpha[a](j, r);
    return s;
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int kk = 0; kk < m; ++kk)
        for (int a = 0; a < k; ++a) {
          const double lhs = cov_alpha(i, j, kk, a) - cov_alpha(j, i, kk, a);
          const double rhs = eps * (g(i, kk) * J.T_low[j] - g(j, kk) * J.T_low[i]) * J.etac[a];
          out.codazzi = std::max(out.codazzi, std::abs(lhs - rhs));
        }

  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          double lhs = J.domega[i][j](a, b) - J.domega[j][i](a, b);
          for (int c = 0; c < k; ++c)
            lhs += J.omega[j](a, c) * J.omega[i](c, b) - J.omega[i](a, c) * J.omega[j](c, b);
          double rhs = 0.0;
          for (int r = 0; r < m; ++r)
            rhs += J.shape[a](r, j) * J.alpha[b](i, r) - J.shape[a](r, i) * J.alpha[b](r, j);
          out.ricci = std::max(out.ricci, std::abs(lhs - rhs));
        }

  return out;
}

InclusionResiduals inclusion_residuals(const Chart& chart, const Vec& u, const FdConfig& cfg) {
  const AmbientSpace& amb = chart.ambient;
  const double eps = double(amb.epsilon);
  const int m = chart.m;
  const Vec vert = amb.vertical();

  const FrameData F = frame_at(chart, u, cfg);
  const int k = F.codim();
  const auto S = detail::second_jet(chart, u, F.point, cfg);
  const Vec T_low = F.metric * F.T;

  InclusionResiduals out;

  std::vector<Vec> dnu(m);
  std::vector<Mat> dxi(m);
  for (int i = 0; i < m; ++i) {
    const double h = cfg.step(cfg.second_step, u[i]);
    dnu[i] = (amb.horizontal(detail::ev(chart, detail::shifted(u, i, h))) -
              amb.horizontal(detail::ev(chart, detail::shifted(u, i, -h)))) /
             (2.0 * h);
    dxi[i] = (frame_at(chart, detail::shifted(u, i, h), cfg).normal -
              frame_at(chart, detail::shifted(u, i, -h), cfg).normal) /
             (2.0 * h);
  }

  // Derivative of the inclusion normal along the chart against its closed form.
  for (int i = 0; i < m; ++i) {
    const Vec expect = F.tangent.col(i) - F.tangent(amb.total_dim() - 1, i) * vert;
    out.sffi = std::max(out.sffi, (dnu[i] - expect).cwiseAbs().maxCoeff());
  }

  // Shape operator in the nu direction equals -Id + T (x) T_flat.
  Mat Mnu(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) Mnu(i, j) = amb.inner(S[i][j], F.nu);
  const Mat Anu = F.metric.llt().solve(Mnu);
  out.anu = (Anu + Mat::Identity(m, m) - F.T * T_low.transpose()).cwiseAbs().maxCoeff();

  // nu-component bookkeeping of the two normal connections, in the pairing
  // form <d_i xi_a, nu> = <X_i, T> <xi_a, eta> that is uniform across the
  // signature (the nu coefficient itself carries an extra epsilon factor in
  // the Lorentzian ambient).
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < k; ++a) {
      const double nu_pairing = amb.inner(dxi[i].col(a), F.nu);
      const double expect = T_low[i] * amb.inner(F.normal.col(a), F.eta);
      out.nconns = std::max(out.nconns, std::abs(nu_pairing - expect));
    }

  // Normal part of d nu equals -<X,T> eta.
  for (int i = 0; i < m; ++i) {
    for (int b = 0; b < k; ++b) {
      const double comp = amb.inner(dnu[i], F.normal.col(b));
      const double expect = -T_low[i] * amb.inner(F.eta, F.normal.col(b));
      out.normalnu = std::max(out.normalnu, std::abs(comp - expect));
    }
    out.normalnu = std::max(out.normalnu, std::abs(eps * amb.inner(dnu[i], F.nu)));
  }

  return out;
}

}  // namespace prodgeo
