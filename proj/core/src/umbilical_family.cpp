#include "prodgeo/umbilical_family.hpp"

#include <cmath>

#include "prodgeo/errors.hpp"
#include "prodgeo/rotational.hpp"

namespace prodgeo {

using Eigen::VectorXd;

bool FamilyParams::admissible(double p, double q) {
  return (p - 1.0) * (p - 1.0) <= q && q < p * p;
}

FamilyParams::FamilyParams(double p_, double q_, int m_) : p(p_), q(q_), m(m_) {
  if (!admissible(p, q))
    throw OutOfDomain("(p, q) outside the admissible set {(p-1)^2 <= q < p^2}");
  if (m < 2) throw OutOfDomain("family dimension must be at least 2");
}

double FamilyParams::r() const { return psi(p, q).first; }
double FamilyParams::h() const { return psi(p, q).second; }
double FamilyParams::half_width() const { return std::sqrt(p - std::sqrt(q)); }

std::pair<double, double> psi(double p, double q) {
  if (!FamilyParams::admissible(p, q))
    throw OutOfDomain("(p, q) outside the admissible set {(p-1)^2 <= q < p^2}");
  const double c = std::sqrt(2.0) / 2.0;
  return {c * std::sqrt(p * p - q), c * std::sqrt(q - (p - 1.0) * (p - 1.0))};
}

std::pair<double, double> psi_inv(double r, double h) {
  if (r <= 0.0 || h < 0.0) throw OutOfDomain("need r > 0 and h >= 0");
  const double p = r * r + h * h + 0.5;
  const double q = p * p - 2.0 * r * r;
  return {p, q};
}

VectorXd conformal_phi(const VectorXd& x, double t) { return std::exp(t) * x; }

std::pair<VectorXd, double> conformal_phi_inv(const VectorXd& y) {
  const double n = y.norm();
  if (n == 0.0) throw ZeroVector("the conformal map misses the origin");
  return {y / n, std::log(n)};
}

VectorXd conformal_phi_point(const VectorXd& chart_point) {
  const Eigen::Index d = chart_point.size();
  return conformal_phi(chart_point.head(d - 1), chart_point[d - 1]);
}

namespace {

// h^2 = (p - s^2) + sqrt((p - s^2)^2 - q), clamped at the interval endpoints.
double h_sq(const FamilyParams& fp, double s) {
  const double u = fp.p - s * s;
  const double disc = u * u - fp.q;
  return u + std::sqrt(std::max(disc, 0.0));
}

void check_interval(const FamilyParams& fp, double s) {
  const double w = fp.half_width();
  if (std::abs(s) > w * (1.0 + 1e-12))
    throw OutOfInterval("profile parameter outside the closed interval");
}

}  // namespace

double h_pq(const FamilyParams& fp, double s) {
  check_interval(fp, s);
  return std::sqrt(h_sq(fp, s));
}

double h_pq_d1(const FamilyParams& fp, double s) {
  check_interval(fp, s);
  const double u = fp.p - s * s;
  const double w = std::sqrt(u * u - fp.q);
  return -s * h_pq(fp, s) / w;
}

double h_pq_d2(const FamilyParams& fp, double s) {
  check_interval(fp, s);
  const double u = fp.p - s * s;
  const double w = std::sqrt(u * u - fp.q);
  const double h = h_pq(fp, s);
  return -h / w + s * s * h / (w * w) + 2.0 * s * s * (s * s - fp.p) * h / (w * w * w);
}

namespace {

Chart family_chart(const FamilyParams& fp, bool reflected) {
  if (reflected && fp.q == 0.0)
    throw QZeroForZ("the reflected chart needs q != 0");
  const int m = fp.m;
  const double p = fp.p, q = fp.q;
  Chart chart;
  chart.ambient = {1, m + 1};
  chart.m = m;

  const FactorParam sphere = sphere_factor(m - 1);
  const double w = fp.half_width() * (1.0 - 1e-3);
  chart.domain.lo = VectorXd(m);
  chart.domain.hi = VectorXd(m);
  chart.domain.lo.head(m - 1) = sphere.domain.lo;
  chart.domain.hi.head(m - 1) = sphere.domain.hi;
  chart.domain.lo[m - 1] = -w;
  chart.domain.hi[m - 1] = w;

  auto factor = sphere.map;
  chart.eval = [factor, p, q, m, reflected](const VectorXd& u) {
    const VectorXd x = factor(u.head(m - 1));
    const double s = u[m - 1];
    const double uu = p - s * s;
    const double h = std::sqrt(uu + std::sqrt(std::max(uu * uu - q, 0.0)));
    const double rt2 = std::sqrt(2.0);
    const double cross = std::sqrt(std::max(q - (p - 1.0) * (p - 1.0), 0.0));
    VectorXd y(m + 3);
    y.head(m) = s * x;
    if (!reflected) {
      y[m] = (h + (1.0 - p) / h) / rt2;
      y[m + 1] = cross / (rt2 * h);
      y[m + 2] = std::log(h);
    } else {
      const double rq = std::sqrt(q);
      y[m] = ((1.0 - p) * h / rq + rq / h) / rt2;
      y[m + 1] = cross * h / (rt2 * rq);
      y[m + 2] = std::log(rq / h);
    }
    return y;
  };
  chart.label = (reflected ? std::string("family Z(") : std::string("family Y(")) +
                std::to_string(fp.p) + "," + std::to_string(fp.q) + ")";
  return chart;
}

}  // namespace

Chart Y_chart(const FamilyParams& fp) { return family_chart(fp, false); }
Chart Z_chart(const FamilyParams& fp) { return family_chart(fp, true); }

VectorXd FamilyInvolution::apply(const VectorXd& chart_point) const {
  const Eigen::Index d = chart_point.size();
  VectorXd out(d);
  out.head(d - 1) = A * chart_point.head(d - 1);
  out[d - 1] = -chart_point[d - 1] + shift;
  return out;
}

FamilyInvolution family_involution(const FamilyParams& fp) {
  if (fp.q == 0.0) throw QZeroForZ("the involution needs q != 0");
  const int m = fp.m;
  FamilyInvolution psi_iso;
  psi_iso.A = Eigen::MatrixXd::Identity(m + 2, m + 2);
  const double rq = std::sqrt(fp.q);
  const double op = 1.0 - fp.p;
  const double cross = std::sqrt(fp.q - op * op);
  psi_iso.A(m, m) = op / rq;
  psi_iso.A(m, m + 1) = cross / rq;
  psi_iso.A(m + 1, m) = cross / rq;
  psi_iso.A(m + 1, m + 1) = -op / rq;
  psi_iso.shift = std::log(rq);
  return psi_iso;
}

SphereImageErrors sphere_image_check(const FamilyParams& fp, int points_per_axis) {
  SphereImageErrors out;
  const int m = fp.m;
  const double r = fp.r(), h = fp.h();
  VectorXd center = VectorXd::Zero(m + 2);
  center[m] = std::sqrt(2.0) / 2.0;
  center[m + 1] = h;

  auto run = [&](const Chart& chart) {
    for (const VectorXd& u : interior_grid(chart.domain, points_per_axis)) {
      const VectorXd img = conformal_phi_point(chart.eval(u));
      out.max_radius_err = std::max(out.max_radius_err, std::abs((img - center).norm() - r));
      out.max_height_err = std::max(out.max_height_err, std::abs(img[m + 1] - h));
    }
  };
  run(Y_chart(fp));
  if (fp.q != 0.0) run(Z_chart(fp));
  return out;
}

double union_coverage_distance(const FamilyParams& fp, int samples_per_axis) {
  const int m = fp.m;
  const double p = fp.p, q = fp.q;
  const double r = fp.r(), h = fp.h();
  const double rt2 = std::sqrt(2.0);
  const double cross = std::sqrt(std::max(q - (p - 1.0) * (p - 1.0), 0.0));

  VectorXd center = VectorXd::Zero(m + 2);
  center[m] = rt2 / 2.0;
  center[m + 1] = h;

  // Conformal image of the chart point over (x in S^{m-1}, s), branch given
  // by the squared height H of the profile.
  auto image_point = [&](const VectorXd& x, double s, double H) {
    VectorXd img(m + 2);
    img.head(m) = s * std::sqrt(H) * x;
    img[m] = (H + 1.0 - p) / rt2;
    img[m + 1] = cross / rt2;
    return img;
  };

  // Deterministic sphere sampling: iterated polar grid on S^m including
  // near-polar rows.
  const FactorParam poles = sphere_factor(m, 1e-3);
  double worst = 0.0;
  for (const VectorXd& t : interior_grid(poles.domain, samples_per_axis, 0.0)) {
    const VectorXd omega = poles.map(t);  // in R^{m+1}
    VectorXd target = center;
    target.head(m + 1) += r * omega;

    // Preimage: H from the axis component, then s^2 = p - (H^2+q)/(2H).
    const double H = p + rt2 * r * omega[m];
    if (H <= 1e-12) continue;  // the removed puncture when q = 0
    const double u = (H * H + q) / (2.0 * H);
    const double s2 = p - u;
    const double s = std::sqrt(std::max(s2, 0.0));
    VectorXd x = VectorXd::Zero(m);
    const double scale = s * std::sqrt(H);
    if (scale > 1e-12) {
      x = (target.head(m) - VectorXd::Zero(m)) / scale;
      const double nx = x.norm();
      if (nx > 0) x /= nx;
    } else {
      x[0] = 1.0;
    }
    const double dist = (image_point(x, s, H) - target).norm();
    worst = std::max(worst, dist);
  }
  return worst;
}

}  // namespace prodgeo
