#include "prodgeo/chart.hpp"

#include <cmath>

namespace prodgeo {

std::vector<Eigen::VectorXd> interior_grid(const Box& box, int points_per_axis,
                                           double relative_margin) {
  const Box b = box.shrunk(relative_margin);
  const int m = b.dim();
  std::vector<Eigen::VectorXd> pts;
  std::vector<int> idx(m, 0);
  const int total = int(std::pow(double(points_per_axis), m) + 0.5);
  pts.reserve(total);
  for (int flat = 0; flat < total; ++flat) {
    int rem = flat;
    Eigen::VectorXd u(m);
    for (int a = m - 1; a >= 0; --a) {
      idx[a] = rem % points_per_axis;
      rem /= points_per_axis;
    }
    for (int a = 0; a < m; ++a) {
      const double f = points_per_axis == 1 ? 0.5 : double(idx[a]) / (points_per_axis - 1);
      u[a] = b.lo[a] + f * (b.hi[a] - b.lo[a]);
    }
    pts.push_back(u);
  }
  return pts;
}

std::vector<Eigen::VectorXd> offset_grid(const Box& box, int points_per_axis,
                                         double relative_margin) {
  auto pts = interior_grid(box, points_per_axis, relative_margin);
  const Box b = box.shrunk(relative_margin);
  const int last = b.dim() - 1;
  const double cell = (b.hi[last] - b.lo[last]) / points_per_axis;
  for (auto& u : pts) {
    const double f = points_per_axis == 1
                         ? 0.0
                         : (u[last] - b.lo[last]) / (b.hi[last] - b.lo[last]);
    u[last] = b.lo[last] + (f * (points_per_axis - 1) + 0.3) * cell;
  }
  return pts;
}

std::vector<Eigen::VectorXd> sample_points(const Box& box, int count, double relative_margin) {
  const int m = box.dim();
  int per_axis = 2;
  while (std::pow(double(per_axis), m) < count) ++per_axis;
  auto grid = interior_grid(box, per_axis, relative_margin);
  // Spread the picks across the full grid instead of taking a leading block.
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  const double stride = double(grid.size()) / count;
  for (int i = 0; i < count; ++i) pts.push_back(grid[size_t(i * stride)]);
  return pts;
}

Chart pad_chart(const Chart& chart, int extra) {
  Chart padded = chart;
  padded.ambient.n = chart.ambient.n + extra;
  const int old_dim = chart.ambient.total_dim();
  auto base_eval = chart.eval;
  padded.eval = [base_eval, old_dim, extra](const Eigen::VectorXd& u) {
    const Eigen::VectorXd x = base_eval(u);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(old_dim + extra);
    y.head(old_dim - 1) = x.head(old_dim - 1);
    y[old_dim - 1 + extra] = x[old_dim - 1];
    return y;
  };
  padded.label = chart.label + " (padded)";
  return padded;
}

}  // namespace prodgeo
