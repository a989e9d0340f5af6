#include "prodgeo/numerics.hpp"

#include <cmath>

#include "prodgeo/errors.hpp"

namespace prodgeo {

namespace {

// Subtracts from v its projections onto the columns of frame (with signs).
Eigen::VectorXd project_out(const AmbientSpace& amb, const PseudoFrame& frame,
                            const Eigen::VectorXd& v) {
  Eigen::VectorXd w = v;
  for (Eigen::Index c = 0; c < frame.vectors.cols(); ++c) {
    const Eigen::VectorXd col = frame.vectors.col(c);
    w -= double(frame.signs[size_t(c)]) * amb.inner(w, col) * col;
  }
  return w;
}

bool append_normalized(const AmbientSpace& amb, PseudoFrame& frame, const Eigen::VectorXd& v,
                       double skip_tol) {
  const Eigen::VectorXd w = project_out(amb, frame, v);
  const double q = amb.inner(w, w);
  const double nrm = std::sqrt(std::abs(q));
  if (nrm < skip_tol) return false;
  Eigen::VectorXd unit = w / nrm;
  // Canonical orientation: dominant component positive. Candidates whose
  // projection changes sign across a point would otherwise flip the frame
  // there, breaking the finite differences of the frame field.
  Eigen::Index dominant = 0;
  unit.cwiseAbs().maxCoeff(&dominant);
  if (unit[dominant] < 0.0) unit = -unit;
  const Eigen::Index c = frame.vectors.cols();
  frame.vectors.conservativeResize(w.size(), c + 1);
  frame.vectors.col(c) = unit;
  frame.signs.push_back(q > 0 ? 1 : -1);
  return true;
}

}  // namespace

PseudoFrame pseudo_orthonormalize(const AmbientSpace& amb, const Eigen::MatrixXd& seeds,
                                  double skip_tol) {
  PseudoFrame frame;
  frame.vectors = Eigen::MatrixXd(seeds.rows(), 0);
  for (Eigen::Index c = 0; c < seeds.cols(); ++c) {
    if (!append_normalized(amb, frame, seeds.col(c), skip_tol))
      throw SingularMetric("degenerate seed vector in orthonormalization");
  }
  return frame;
}

Eigen::MatrixXd complete_frame(const AmbientSpace& amb, PseudoFrame& have, int want,
                               double skip_tol) {
  const int dim = amb.total_dim();
  Eigen::MatrixXd extra(dim, want);
  int found = 0;
  for (int j = 0; j < dim && found < want; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e[j] = 1.0;
    if (append_normalized(amb, have, e, skip_tol)) {
      extra.col(found++) = have.vectors.col(have.vectors.cols() - 1);
    }
  }
  if (found < want)
    throw SingularMetric("normal frame completion found fewer directions than expected");
  return extra;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb,
               double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double fm, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, flm);
  const double right = simpson(f, m, fm, b, fb, frm);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson(f, a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, fm, whole, abs_tol, 48);
}

}  // namespace prodgeo
