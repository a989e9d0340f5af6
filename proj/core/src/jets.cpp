#include "jets.hpp"

namespace prodgeo::detail {

Vec d1(const Chart& c, const Vec& u, int i, double h) {
  return (ev(c, shifted(u, i, h)) - ev(c, shifted(u, i, -h))) / (2.0 * h);
}

Vec d2_diag(const Chart& c, const Vec& u, const Vec& f0, int i, double h) {
  return (ev(c, shifted(u, i, h)) - 2.0 * f0 + ev(c, shifted(u, i, -h))) / (h * h);
}

Vec d2_mixed(const Chart& c, const Vec& u, int i, double hi, int j, double hj) {
  return (ev(c, shifted2(u, i, hi, j, hj)) - ev(c, shifted2(u, i, hi, j, -hj)) -
          ev(c, shifted2(u, i, -hi, j, hj)) + ev(c, shifted2(u, i, -hi, j, -hj))) /
         (4.0 * hi * hj);
}

Vec d3(const Chart& c, const Vec& u, int i, int j, int k, double h) {
  if (i == j && j == k) {
    return (ev(c, shifted(u, i, 2 * h)) - 2.0 * ev(c, shifted(u, i, h)) +
            2.0 * ev(c, shifted(u, i, -h)) - ev(c, shifted(u, i, -2 * h))) /
           (2.0 * h * h * h);
  }
  if (i == j) {  // twice along i, once along k
    auto dd = [&](double hk) {
      return ev(c, shifted2(u, i, h, k, hk)) - 2.0 * ev(c, shifted(u, k, hk)) +
             ev(c, shifted2(u, i, -h, k, hk));
    };
    return (dd(h) - dd(-h)) / (2.0 * h * h * h);
  }
  if (j == k) return d3(c, u, j, j, i, h);
  if (i == k) return d3(c, u, i, i, j, h);
  Vec acc = Vec::Zero(ev(c, u).size());
  for (int si : {1, -1})
    for (int sj : {1, -1})
      for (int sk : {1, -1}) {
        Vec v = u;
        v[i] += si * h;
        v[j] += sj * h;
        v[k] += sk * h;
        acc += double(si * sj * sk) * ev(c, v);
      }
  return acc / (8.0 * h * h * h);
}

std::vector<std::vector<Vec>> second_jet(const Chart& c, const Vec& u, const Vec& f0,
                                         const FdConfig& cfg) {
  const int m = c.m;
  std::vector<std::vector<Vec>> S(m, std::vector<Vec>(m));
  for (int i = 0; i < m; ++i) {
    const double hi = cfg.step(cfg.second_step, u[i]);
    S[i][i] = d2_diag(c, u, f0, i, hi);
    for (int j = i + 1; j < m; ++j) {
      const double hj = cfg.step(cfg.second_step, u[j]);
      S[i][j] = S[j][i] = d2_mixed(c, u, i, hi, j, hj);
    }
  }
  return S;
}

CompatJet compat_jet(const Chart& chart, const Vec& u, const FdConfig& cfg) {
  CompatJet J;
  J.F = frame_at(chart, u, cfg);
  const AmbientSpace& amb = chart.ambient;
  const int m = chart.m;
  const int k = J.F.codim();

  J.S = second_jet(chart, u, J.F.point, cfg);

  J.T3.assign(m, std::vector<std::vector<Vec>>(m, std::vector<Vec>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (int l = j; l < m; ++l) {
        const double h = cfg.step(cfg.third_step, u[i]);
        const Vec t3 = d3(chart, u, i, j, l, h);
        J.T3[i][j][l] = J.T3[i][l][j] = J.T3[j][i][l] = J.T3[j][l][i] = J.T3[l][i][j] =
            J.T3[l][j][i] = t3;
      }

  J.dxi.resize(m);
  for (int i = 0; i < m; ++i) {
    const double h = cfg.step(cfg.second_step, u[i]);
    const Mat np = frame_at(chart, shifted(u, i, h), cfg).normal;
    const Mat nm = frame_at(chart, shifted(u, i, -h), cfg).normal;
    J.dxi[i] = (np - nm) / (2.0 * h);
  }
  J.d2xi.assign(m, std::vector<Mat>(m));
  for (int i = 0; i < m; ++i) {
    const double hi = cfg.step(cfg.third_step, u[i]);
    J.d2xi[i][i] = (frame_at(chart, shifted(u, i, hi), cfg).normal - 2.0 * J.F.normal +
                    frame_at(chart, shifted(u, i, -hi), cfg).normal) /
                   (hi * hi);
    for (int j = i + 1; j < m; ++j) {
      const double hj = cfg.step(cfg.third_step, u[j]);
      const Mat mixed = (frame_at(chart, shifted2(u, i, hi, j, hj), cfg).normal -
                         frame_at(chart, shifted2(u, i, hi, j, -hj), cfg).normal -
                         frame_at(chart, shifted2(u, i, -hi, j, hj), cfg).normal +
                         frame_at(chart, shifted2(u, i, -hi, j, -hj), cfg).normal) /
                        (4.0 * hi * hj);
      J.d2xi[i][j] = J.d2xi[j][i] = mixed;
    }
  }

  J.dnu.resize(m);
  for (int i = 0; i < m; ++i) {
    const double h = cfg.step(cfg.second_step, u[i]);
    J.dnu[i] = (amb.horizontal(ev(chart, shifted(u, i, h))) -
                amb.horizontal(ev(chart, shifted(u, i, -h)))) /
               (2.0 * h);
  }

  J.ginv = J.F.metric.inverse();

  J.alpha.resize(k);
  J.shape.resize(k);
  for (int a = 0; a < k; ++a) {
    Mat A(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) A(i, j) = amb.inner(J.S[i][j], J.F.normal.col(a));
    J.alpha[a] = A;
    J.shape[a] = J.ginv * A;
  }

  J.omega.resize(m);
  for (int i = 0; i < m; ++i) {
    Mat w(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) w(a, b) = amb.inner(J.dxi[i].col(a), J.F.normal.col(b));
    J.omega[i] = w;
  }
  J.domega.assign(m, std::vector<Mat>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Mat w(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          w(a, b) = amb.inner(J.d2xi[i][j].col(a), J.F.normal.col(b)) +
                    amb.inner(J.dxi[j].col(a), J.dxi[i].col(b));
      J.domega[i][j] = w;
    }

  J.T_low = J.F.metric * J.F.T;
  J.etac = Vec(k);
  for (int a = 0; a < k; ++a) J.etac[a] = amb.inner(J.F.eta, J.F.normal.col(a));
  return J;
}

Connection connection_from(const AmbientSpace& amb, const CompatJet& J, int m) {
  std::vector<Mat> dg(m);
  for (int l = 0; l < m; ++l) {
    Mat d(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        d(i, j) =
            amb.inner(J.S[i][l], J.F.tangent.col(j)) + amb.inner(J.F.tangent.col(i), J.S[j][l]);
    dg[l] = d;
  }
  std::vector<std::vector<Mat>> d2g(m, std::vector<Mat>(m));
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      Mat d(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          d(i, j) = amb.inner(J.T3[i][k][l], J.F.tangent.col(j)) +
                    amb.inner(J.S[i][k], J.S[j][l]) + amb.inner(J.S[i][l], J.S[j][k]) +
                    amb.inner(J.F.tangent.col(i), J.T3[j][k][l]);
      d2g[k][l] = d;
    }

  auto rhs = [&](const std::vector<Mat>& dm, int i, int j, int r) {
    return dm[i](r, j) + dm[j](r, i) - dm[r](i, j);
  };

  Connection conn;
  conn.gamma.assign(m, Mat::Zero(m, m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l) {
        double s = 0.0;
        for (int r = 0; r < m; ++r) s += J.ginv(l, r) * rhs(dg, i, j, r);
        conn.gamma[l](i, j) = 0.5 * s;
      }

  std::vector<Mat> dginv(m);
  for (int l = 0; l < m; ++l) dginv[l] = -J.ginv * dg[l] * J.ginv;

  conn.dgamma.assign(m, std::vector<Mat>(m, Mat::Zero(m, m)));
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) {
          double s = 0.0;
          for (int r = 0; r < m; ++r) {
            s += dginv[k](l, r) * rhs(dg, i, j, r);
            s += J.ginv(l, r) * (d2g[k][i](r, j) + d2g[k][j](r, i) - d2g[k][r](i, j));
          }
          conn.dgamma[k][l](i, j) = 0.5 * s;
        }
  return conn;
}

std::vector<Mat> orthonormal_shapes(const Mat& metric, const std::vector<Mat>& shapes) {
  const Eigen::LLT<Mat> llt(metric);
  const Mat L = llt.matrixL();
  const Mat Linv = L.inverse();
  std::vector<Mat> out;
  out.reserve(shapes.size());
  for (const Mat& A : shapes) out.push_back(L.transpose() * A * Linv.transpose());
  return out;
}

std::vector<std::vector<Mat>> rperp_components(const Chart& chart, const Vec& u,
                                               const FdConfig& cfg, double step2) {
  const AmbientSpace& amb = chart.ambient;
  const int m = chart.m;
  const FrameData F = frame_at(chart, u, cfg);
  const int k = F.codim();

  std::vector<Mat> dxi(m);
  for (int i = 0; i < m; ++i) {
    const double h = cfg.step(cfg.second_step, u[i]);
    dxi[i] = (frame_at(chart, shifted(u, i, h), cfg).normal -
              frame_at(chart, shifted(u, i, -h), cfg).normal) /
             (2.0 * h);
  }
  std::vector<std::vector<Mat>> d2xi(m, std::vector<Mat>(m));
  for (int i = 0; i < m; ++i) {
    const double hi = cfg.step(step2, u[i]);
    d2xi[i][i] = (frame_at(chart, shifted(u, i, hi), cfg).normal - 2.0 * F.normal +
                  frame_at(chart, shifted(u, i, -hi), cfg).normal) /
                 (hi * hi);
    for (int j = i + 1; j < m; ++j) {
      const double hj = cfg.step(step2, u[j]);
      const Mat mixed = (frame_at(chart, shifted2(u, i, hi, j, hj), cfg).normal -
                         frame_at(chart, shifted2(u, i, hi, j, -hj), cfg).normal -
                         frame_at(chart, shifted2(u, i, -hi, j, hj), cfg).normal +
                         frame_at(chart, shifted2(u, i, -hi, j, -hj), cfg).normal) /
                        (4.0 * hi * hj);
      d2xi[i][j] = d2xi[j][i] = mixed;
    }
  }

  std::vector<Mat> omega(m);
  for (int i = 0; i < m; ++i) {
    Mat w(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) w(a, b) = amb.inner(dxi[i].col(a), F.normal.col(b));
    omega[i] = w;
  }

  auto domega = [&](int i, int j, int a, int b) {
    return amb.inner(d2xi[i][j].col(a), F.normal.col(b)) +
           amb.inner(dxi[j].col(a), dxi[i].col(b));
  };

  std::vector<std::vector<Mat>> R(m, std::vector<Mat>(m, Mat::Zero(k, k)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      Mat r(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          double v = domega(i, j, a, b) - domega(j, i, a, b);
          for (int c = 0; c < k; ++c)
            v += omega[j](a, c) * omega[i](c, b) - omega[i](a, c) * omega[j](c, b);
          r(a, b) = v;
        }
      R[i][j] = r;
    }
  return R;
}

}  // namespace prodgeo::detail
