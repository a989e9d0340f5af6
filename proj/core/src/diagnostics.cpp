#include "prodgeo/diagnostics.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "jets.hpp"
#include "prodgeo/errors.hpp"

namespace prodgeo {

using detail::Mat;
using detail::Vec;

namespace {

constexpr double kTzero = 1e-8;

double metric_norm(const Mat& g, const Vec& v) { return std::sqrt(v.dot(g * v)); }

// g-orthonormal basis of the orthogonal complement of T (empty when T ~ 0).
Mat t_perp_basis(const Mat& g, const Vec& T) {
  const int m = int(g.rows());
  const Eigen::LLT<Mat> llt(g);
  const Mat L = llt.matrixL();
  Mat cand = Mat(L.transpose()).inverse();  // g-orthonormal basis of the whole space
  const double tn = metric_norm(g, T);
  std::vector<Vec> kept;
  Vec that;
  if (tn >= kTzero) that = T / tn;
  for (int c = 0; c < m; ++c) {
    Vec v = cand.col(c);
    if (tn >= kTzero) v -= that.dot(g * v) * that;
    for (const Vec& w : kept) v -= w.dot(g * v) * w;
    const double n = metric_norm(g, v);
    if (n > 1e-10) kept.push_back(v / n);
  }
  const int want = tn >= kTzero ? m - 1 : m;
  Mat B(m, std::min<int>(want, int(kept.size())));
  for (int c = 0; c < B.cols(); ++c) B.col(c) = kept[size_t(c)];
  return B;
}

}  // namespace

double umbilicity_residual(const FundamentalData& fd) {
  double r = 0.0;
  for (int a = 0; a < fd.frame.codim(); ++a)
    r = std::max(
        r, (fd.alpha[a] - fd.mean_curvature[a] * fd.frame.metric).cwiseAbs().maxCoeff());
  return r;
}

double umbilicity_residual(const Chart& chart, const Vec& u, const FdConfig& cfg) {
  return umbilicity_residual(fundamental_at(chart, u, cfg));
}

std::optional<double> class_a_residual(const FundamentalData& fd) {
  const Mat& g = fd.frame.metric;
  const double tn = metric_norm(g, fd.frame.T);
  if (tn < kTzero) return std::nullopt;
  const Vec that = fd.frame.T / tn;
  double r = 0.0;
  for (const Mat& A : fd.shape) {
    const Vec v = A * that;
    const Vec w = v - that.dot(g * v) * that;
    r = std::max(r, metric_norm(g, w));
  }
  return r;
}

std::optional<double> class_a_residual(const Chart& chart, const Vec& u, const FdConfig& cfg) {
  return class_a_residual(fundamental_at(chart, u, cfg));
}

std::optional<double> restricted_umbilicity_residual(const Chart& chart, const Vec& u,
                                                     const FdConfig& cfg) {
  const FundamentalData fd = fundamental_at(chart, u, cfg);
  const Mat& g = fd.frame.metric;
  const double tn = metric_norm(g, fd.frame.T);
  if (tn < kTzero) return std::nullopt;
  const Vec that = fd.frame.T / tn;
  const Mat B = t_perp_basis(g, fd.frame.T);
  const int k = fd.frame.codim();
  const int mb = int(B.cols());

  // zeta = alpha(X1, X1) for the first unit X1 orthogonal to T.
  Vec zeta(k);
  for (int a = 0; a < k; ++a) zeta[a] = B.col(0).dot(fd.alpha[a] * B.col(0));

  double r = 0.0;
  for (int a = 0; a < k; ++a) {
    for (int i = 0; i < mb; ++i)
      for (int j = 0; j < mb; ++j) {
        const double aij = B.col(i).dot(fd.alpha[a] * B.col(j));
        const double target = (i == j) ? zeta[a] : 0.0;
        r = std::max(r, std::abs(aij - target));
      }
    // X ranging over the T-direction as well: alpha(T^, X_perp) must vanish.
    for (int j = 0; j < mb; ++j)
      r = std::max(r, std::abs(that.dot(fd.alpha[a] * B.col(j))));
  }
  return r;
}

EtaParallelResiduals parallel_eta_residual(const Chart& chart, const Vec& u,
                                           const FdConfig& cfg) {
  const AmbientSpace& amb = chart.ambient;
  const FundamentalData fd = fundamental_at(chart, u, cfg);
  const int m = chart.m;
  const int k = fd.frame.codim();

  // Component field of eta in the moving frame, differentiated per axis.
  Mat D(k, m);  // D(a,i) = (nabla^perp_i eta)^a
  for (int i = 0; i < m; ++i) {
    const double h = cfg.step(cfg.second_step, u[i]);
    const FrameData Fp = frame_at(chart, detail::shifted(u, i, h), cfg);
    const FrameData Fm = frame_at(chart, detail::shifted(u, i, -h), cfg);
    for (int a = 0; a < k; ++a) {
      const double ep = amb.inner(Fp.eta, Fp.normal.col(a));
      const double em = amb.inner(Fm.eta, Fm.normal.col(a));
      double v = (ep - em) / (2.0 * h);
      for (int b = 0; b < k; ++b)
        v += amb.inner(fd.frame.eta, fd.frame.normal.col(b)) * fd.normal_connection[i](b, a);
      D(a, i) = v;
    }
  }

  EtaParallelResiduals out;
  const Mat& g = fd.frame.metric;
  const Eigen::LLT<Mat> llt(g);
  const Mat full_basis = Mat(Mat(llt.matrixL()).transpose()).inverse();
  Eigen::JacobiSVD<Mat> svd_full(D * full_basis);
  out.full = svd_full.singularValues().size() ? svd_full.singularValues()[0] : 0.0;

  const Mat B = t_perp_basis(g, fd.frame.T);
  if (B.cols() > 0) {
    Eigen::JacobiSVD<Mat> svd_perp(D * B);
    out.along_t_perp = svd_perp.singularValues().size() ? svd_perp.singularValues()[0] : 0.0;
  }

  for (int i = 0; i < m; ++i)
    for (int a = 0; a < k; ++a) {
      double aiT = 0.0;
      for (int j = 0; j < m; ++j) aiT += fd.alpha[a](i, j) * fd.frame.T[j];
      out.cross_check = std::max(out.cross_check, std::abs(aiT + D(a, i)));
    }
  return out;
}

double flat_normal_bundle_residual(const FundamentalData& fd) {
  const auto B = detail::orthonormal_shapes(fd.frame.metric, fd.shape);
  double r = 0.0;
  for (size_t a = 0; a < B.size(); ++a)
    for (size_t b = a + 1; b < B.size(); ++b)
      r = std::max(r, (B[a] * B[b] - B[b] * B[a]).cwiseAbs().maxCoeff());
  return r;
}

double flat_normal_bundle_residual(const Chart& chart, const Vec& u, const FdConfig& cfg) {
  return flat_normal_bundle_residual(fundamental_at(chart, u, cfg));
}

namespace {

// Shape-operator family extended by the nu-direction operator, all
// conjugated into a metric-orthonormal basis. The nu operator comes last.
std::vector<Mat> shapes_with_nu(const Chart& chart, const Vec& u, const FdConfig& cfg) {
  const FundamentalData fd = fundamental_at(chart, u, cfg);
  std::vector<Mat> all = fd.shape;
  all.push_back(shape_operator(chart, u, fd.frame.nu, cfg));
  return detail::orthonormal_shapes(fd.frame.metric, all);
}

}  // namespace

double nu_commutator_residual(const Chart& chart, const Vec& u, const FdConfig& cfg) {
  const auto fam = shapes_with_nu(chart, u, cfg);
  const Mat& Bnu = fam.back();
  double r = 0.0;
  for (size_t a = 0; a + 1 < fam.size(); ++a)
    r = std::max(r, (fam[a] * Bnu - Bnu * fam[a]).cwiseAbs().maxCoeff());
  return r;
}

double extended_commutator_residual(const Chart& chart, const Vec& u, const FdConfig& cfg) {
  const auto fam = shapes_with_nu(chart, u, cfg);
  double r = 0.0;
  for (size_t a = 0; a < fam.size(); ++a)
    for (size_t b = a + 1; b < fam.size(); ++b)
      r = std::max(r, (fam[a] * fam[b] - fam[b] * fam[a]).cwiseAbs().maxCoeff());
  return r;
}

namespace {

// Rows of the second fundamental form (i <= j) in the normal frame,
// optionally extended by the eta components.
Mat alpha_rows(const FundamentalData& fd, bool with_eta, const AmbientSpace& amb) {
  const int m = int(fd.frame.metric.rows());
  const int k = fd.frame.codim();
  const int nrows = m * (m + 1) / 2 + (with_eta ? 1 : 0);
  Mat rows(nrows, k);
  int r = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j, ++r)
      for (int a = 0; a < k; ++a) rows(r, a) = fd.alpha[a](i, j);
  if (with_eta)
    for (int a = 0; a < k; ++a) rows(r, a) = amb.inner(fd.frame.eta, fd.frame.normal.col(a));
  return rows;
}

int svd_rank(const Eigen::JacobiSVD<Mat>& svd, double rank_tol) {
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] < 1e-12) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] >= rank_tol * sv[0]) ++r;
  return r;
}

}  // namespace

NormalSubspace first_normal_space(const Chart& chart, const Vec& u, double rank_tol,
                                  const FdConfig& cfg) {
  const FundamentalData fd = fundamental_at(chart, u, cfg);
  const Mat rows = alpha_rows(fd, false, chart.ambient);
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  NormalSubspace out;
  out.singular_values = svd.singularValues();
  out.dimension = svd_rank(svd, rank_tol);
  out.basis = svd.matrixV().leftCols(out.dimension);
  return out;
}

ReductionCheck codimension_reduction_check(const Chart& chart,
                                           const std::vector<Vec>& grid, double rank_tol,
                                           const FdConfig& cfg) {
  if (grid.empty()) throw WrongDimension("reduction check needs a nonempty grid");
  const AmbientSpace& amb = chart.ambient;
  const int m = chart.m;

  ReductionCheck out;
  bool first = true;
  Mat image_rows(int(grid.size()) + 1, amb.total_dim());

  int row = 0;
  for (const Vec& u : grid) {
    const detail::CompatJet J = detail::compat_jet(chart, u, cfg);
    const int k = J.F.codim();
    FundamentalData fd;
    fd.frame = J.F;
    fd.alpha = J.alpha;
    fd.shape = J.shape;

    // L = N1 + span{eta} from the stacked value rows.
    Mat rows(m * (m + 1) / 2 + 1, k);
    int r = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j, ++r)
        for (int a = 0; a < k; ++a) rows(r, a) = J.alpha[a](i, j);
    for (int a = 0; a < k; ++a) rows(r, a) = J.etac[a];
    Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
    const int ell = svd_rank(svd, rank_tol);
    if (first) {
      out.ell = ell;
      first = false;
    } else if (ell != out.ell) {
      throw NonConstantRank("rank of N1 + span{eta} jumps across the grid of " + chart.label);
    }
    const Mat Lperp = svd.matrixV().rightCols(k - ell);

    const detail::Connection conn = detail::connection_from(amb, J, m);

    // nabla^perp of the alpha sections escaping L.
    if (Lperp.cols() > 0) {
      for (int kk = 0; kk < m; ++kk)
        for (int i = 0; i < m; ++i)
          for (int j = i; j < m; ++j) {
            Vec ds(k);
            for (int a = 0; a < k; ++a) {
              double v = J.dalpha(amb, kk, i, j, a);
              for (int b = 0; b < k; ++b) v += J.alpha[b](i, j) * J.omega[kk](b, a);
              ds[a] = v;
            }
            out.parallel_residual =
                std::max(out.parallel_residual, (Lperp.transpose() * ds).cwiseAbs().maxCoeff());
          }

      // Mean-curvature derivative must stay inside L.
      std::vector<Mat> dginv(m);
      for (int l = 0; l < m; ++l) {
        Mat dg(m, m);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            dg(i, j) = amb.inner(J.S[i][l], J.F.tangent.col(j)) +
                       amb.inner(J.F.tangent.col(i), J.S[j][l]);
        dginv[l] = -J.ginv * dg * J.ginv;
      }
      for (int i = 0; i < m; ++i) {
        Vec dH(k);
        for (int a = 0; a < k; ++a) {
          double v = 0.0;
          for (int jj = 0; jj < m; ++jj)
            for (int kk = 0; kk < m; ++kk) {
              v += dginv[i](jj, kk) * J.alpha[a](jj, kk);
              v += J.ginv(jj, kk) * J.dalpha(amb, i, jj, kk, a);
            }
          v /= m;
          for (int b = 0; b < k; ++b)
            v += (J.ginv * J.alpha[b]).trace() / m * J.omega[i](b, a);
          dH[a] = v;
        }
        out.dajczer_ii_residual =
            std::max(out.dajczer_ii_residual, (Lperp.transpose() * dH).cwiseAbs().maxCoeff());
      }

      // Derivative of the normal curvature applied to the complement frame.
      const double Hc = cfg.curvature_step;
      auto R0 = detail::rperp_components(chart, u, cfg, Hc);
      for (int kk = 0; kk < m; ++kk) {
        const double h = cfg.step(Hc, u[kk]);
        const auto Rp = detail::rperp_components(chart, detail::shifted(u, kk, h), cfg, Hc);
        const auto Rm = detail::rperp_components(chart, detail::shifted(u, kk, -h), cfg, Hc);
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j) {
            Mat dR = (Rp[i][j] - Rm[i][j]) / (2.0 * h);
            // covariant corrections
            Mat cov = dR;
            cov += R0[i][j] * J.omega[kk];          // output-frame correction
            cov -= J.omega[kk] * R0[i][j];          // input-frame correction
            for (int rr = 0; rr < m; ++rr) {
              cov -= conn.gamma[rr](kk, i) * R0[rr][j];
              cov -= conn.gamma[rr](kk, j) * R0[i][rr];
            }
            for (int c = 0; c < Lperp.cols(); ++c) {
              const Vec outv = cov.transpose() * Lperp.col(c);
              out.dajczer_i_residual =
                  std::max(out.dajczer_i_residual, outv.cwiseAbs().maxCoeff());
            }
          }
      }
    }

    image_rows.row(row++) = J.F.point.transpose();
  }
  image_rows.row(row) = amb.vertical().transpose();

  Eigen::JacobiSVD<Mat> fit(image_rows);
  out.fitted_dim = svd_rank(fit, rank_tol);
  out.expected_fitted_dim = m + out.ell + 1;
  return out;
}

double abresch_rosenberg_Q(const Chart& chart, const Vec& u, const Vec& X, const Vec& Y,
                           const FdConfig& cfg) {
  if (chart.m != 2) throw WrongDimension("the quadratic form is defined on surface charts");
  const FundamentalData fd = fundamental_at(chart, u, cfg);
  const Mat& g = fd.frame.metric;
  double q = 0.0;
  for (int a = 0; a < fd.frame.codim(); ++a)
    q += 2.0 * X.dot(fd.alpha[a] * Y) * fd.mean_curvature[a];
  const Vec T_low = g * fd.frame.T;
  q -= double(chart.ambient.epsilon) * X.dot(T_low) * Y.dot(T_low);
  return q;
}

DiagnosticReport sweep_residual(
    const std::string& name, const Chart& chart, const std::vector<Vec>& grid, double tol,
    const std::function<std::optional<double>(const Chart&, const Vec&)>& fn) {
  DiagnosticReport rep;
  rep.name = name;
  rep.tolerance = tol;
  rep.grid = std::to_string(grid.size()) + " grid points";
  for (const Vec& u : grid) {
    const auto v = fn(chart, u);
    if (v) rep.max_residual = std::max(rep.max_residual, *v);
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

std::vector<Eigen::VectorXd> standard_grid(const Chart& chart, const CheckOptions& opt) {
  return opt.offset_last_axis ? offset_grid(chart.domain, opt.grid_points, opt.margin)
                              : interior_grid(chart.domain, opt.grid_points, opt.margin);
}

std::vector<DiagnosticReport> identity_checks(const Chart& chart, const CheckOptions& opt) {
  const auto grid = standard_grid(chart, opt);
  // Sparse deterministic subsample for the third-order residuals, pulled
  // slightly further from the boundary so the wide stencils fit.
  CheckOptions sparse_opt = opt;
  sparse_opt.margin = 3 * opt.margin;
  sparse_opt.grid_points = std::max(2, int(std::ceil(std::pow(
                               double(opt.compat_samples), 1.0 / chart.m))));
  auto sparse = standard_grid(chart, sparse_opt);
  if (int(sparse.size()) > opt.compat_samples) {
    std::vector<Eigen::VectorXd> picked;
    const double stride = double(sparse.size()) / opt.compat_samples;
    for (int i = 0; i < opt.compat_samples; ++i) picked.push_back(sparse[size_t(i * stride)]);
    sparse = picked;
  }
  std::vector<DiagnosticReport> reps;

  reps.push_back(sweep_residual("surface_constraint", chart, grid, opt.tol.surface,
                                [&](const Chart& c, const Vec& u) -> std::optional<double> {
                                  return c.ambient.surface_residual(c.eval(u));
                                }));

  reps.push_back(sweep_residual(
      "frame_vertical_split", chart, grid, opt.tol.frame,
      [&](const Chart& c, const Vec& u) -> std::optional<double> {
        const FrameData F = frame_at(c, u, opt.fd);
        const double parts = F.T_norm2() + c.ambient.norm2(F.eta);
        double r = std::abs(parts - 1.0);
        const Eigen::VectorXd recon = F.tangent * F.T + F.eta - c.ambient.vertical();
        return std::max(r, recon.cwiseAbs().maxCoeff());
      }));

  reps.push_back(sweep_residual(
      "frame_orthonormality", chart, grid, opt.tol.frame,
      [&](const Chart& c, const Vec& u) -> std::optional<double> {
        const FrameData F = frame_at(c, u, opt.fd);
        double r = 0.0;
        for (int a = 0; a < F.codim(); ++a) {
          for (int b = 0; b < F.codim(); ++b) {
            const double d = a == b ? 1.0 : 0.0;
            r = std::max(r,
                         std::abs(c.ambient.inner(F.normal.col(a), F.normal.col(b)) - d));
          }
          for (int i = 0; i < c.m; ++i)
            r = std::max(r, std::abs(c.ambient.inner(F.normal.col(a), F.tangent.col(i))));
          r = std::max(r, std::abs(c.ambient.inner(F.normal.col(a), F.nu)));
        }
        return r;
      }));

  CompatibilityResiduals comp;
  InclusionResiduals inc;
  for (const Vec& u : sparse) {
    const auto cr = compatibility_residuals(chart, u, opt.fd);
    comp.gauss = std::max(comp.gauss, cr.gauss);
    comp.codazzi = std::max(comp.codazzi, cr.codazzi);
    comp.ricci = std::max(comp.ricci, cr.ricci);
    const auto ir = inclusion_residuals(chart, u, opt.fd);
    inc.sffi = std::max(inc.sffi, ir.sffi);
    inc.anu = std::max(inc.anu, ir.anu);
    inc.nconns = std::max(inc.nconns, ir.nconns);
    inc.normalnu = std::max(inc.normalnu, ir.normalnu);
  }
  const std::string sdesc = std::to_string(sparse.size()) + " grid points";
  auto push = [&](const std::string& name, double v, double tol) {
    reps.push_back({name, v, tol, v <= tol, sdesc});
  };
  push("gauss", comp.gauss, opt.tol.compat);
  push("codazzi", comp.codazzi, opt.tol.compat);
  push("ricci", comp.ricci, opt.tol.compat);
  push("sffi", inc.sffi, opt.tol.compat);
  push("anu", inc.anu, opt.tol.compat);
  push("nconns", inc.nconns, opt.tol.compat);
  push("normalnu", inc.normalnu, opt.tol.compat);
  return reps;
}

}  // namespace prodgeo
