#pragma once

// Internal stencil machinery shared by the geometry and diagnostics
// translation units. Not installed.

#include <vector>

#include <Eigen/Dense>

#include "prodgeo/chart.hpp"
#include "prodgeo/errors.hpp"
#include "prodgeo/geometry.hpp"
#include "prodgeo/numerics.hpp"

namespace prodgeo::detail {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline Vec ev(const Chart& c, const Vec& u) {
  if (!c.domain.contains(u))
    throw StencilOutOfDomain("stencil point left the parameter box of " + c.label);
  return c.eval(u);
}

inline Vec shifted(const Vec& u, int i, double h) {
  Vec v = u;
  v[i] += h;
  return v;
}

inline Vec shifted2(const Vec& u, int i, double hi, int j, double hj) {
  Vec v = u;
  v[i] += hi;
  v[j] += hj;
  return v;
}

Vec d1(const Chart& c, const Vec& u, int i, double h);
Vec d2_diag(const Chart& c, const Vec& u, const Vec& f0, int i, double h);
Vec d2_mixed(const Chart& c, const Vec& u, int i, double hi, int j, double hj);
Vec d3(const Chart& c, const Vec& u, int i, int j, int k, double h);

// Second partials of the chart map (symmetric table) at the second-order step.
std::vector<std::vector<Vec>> second_jet(const Chart& c, const Vec& u, const Vec& f0,
                                         const FdConfig& cfg);

// Everything the third-order residuals need at one point.
struct CompatJet {
  FrameData F;
  std::vector<std::vector<Vec>> S;                // second partials of the map
  std::vector<std::vector<std::vector<Vec>>> T3;  // third partials
  std::vector<Mat> dxi;                           // dxi[i]: column a = d_i xi_a
  std::vector<std::vector<Mat>> d2xi;             // d2xi[i][j]: column a = d_i d_j xi_a
  std::vector<Vec> dnu;                           // d_i nu
  Mat ginv;
  std::vector<Mat> alpha;
  std::vector<Mat> shape;
  std::vector<Mat> omega;                // omega[i](a,b)
  std::vector<std::vector<Mat>> domega;  // domega[i][j] = d_i omega_j
  Vec T_low;
  Vec etac;

  // d/du_i of the component field alpha_jk^a in the moving frame.
  double dalpha(const AmbientSpace& amb, int i, int j, int k, int a) const {
    return amb.inner(T3[i][j][k], F.normal.col(a)) + amb.inner(S[j][k], dxi[i].col(a));
  }
};

CompatJet compat_jet(const Chart& chart, const Vec& u, const FdConfig& cfg);

// Christoffel symbols and their first derivatives from the jet.
struct Connection {
  std::vector<Mat> gamma;                 // gamma[l](i,j) = Gamma^l_ij
  std::vector<std::vector<Mat>> dgamma;   // dgamma[k][l](i,j) = d_k Gamma^l_ij
};
Connection connection_from(const AmbientSpace& amb, const CompatJet& J, int m);

// Shape operators conjugated into a metric-orthonormal basis (symmetric there).
std::vector<Mat> orthonormal_shapes(const Mat& metric, const std::vector<Mat>& shapes);

// Normal-curvature components R[i][j](a,b) of the chart at u, with the
// frame-field second derivatives taken at `step2`.
std::vector<std::vector<Mat>> rperp_components(const Chart& chart, const Vec& u,
                                               const FdConfig& cfg, double step2);

}  // namespace prodgeo::detail
