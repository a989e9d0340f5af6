#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "prodgeo/ambient.hpp"

namespace prodgeo {

// Axis-aligned parameter box.
struct Box {
  Eigen::VectorXd lo, hi;

  int dim() const { return int(lo.size()); }

  bool contains(const Eigen::VectorXd& u, double pad = 0.0) const {
    for (int i = 0; i < dim(); ++i)
      if (u[i] < lo[i] + pad || u[i] > hi[i] - pad) return false;
    return true;
  }

  // Box shrunk on each axis by a fraction of that axis length.
  Box shrunk(double relative_margin) const {
    Box b = *this;
    for (int i = 0; i < dim(); ++i) {
      const double c = relative_margin * (hi[i] - lo[i]);
      b.lo[i] += c;
      b.hi[i] -= c;
    }
    return b;
  }

  static Box of(std::initializer_list<double> lo_, std::initializer_list<double> hi_) {
    Box b;
    b.lo = Eigen::VectorXd(Eigen::Index(lo_.size()));
    b.hi = Eigen::VectorXd(Eigen::Index(hi_.size()));
    int i = 0;
    for (double v : lo_) b.lo[i++] = v;
    i = 0;
    for (double v : hi_) b.hi[i++] = v;
    return b;
  }
};

// Parametric immersion u in R^m -> E^{n+2} whose image lies on the product
// space. The closure is the universal currency between modules: factories
// hand out Charts, the numerical core consumes them.
struct Chart {
  AmbientSpace ambient;
  int m = 2;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> eval;
  Box domain;
  std::string label;
};

// Row-major rectangular grid over the box shrunk by `relative_margin`.
std::vector<Eigen::VectorXd> interior_grid(const Box& box, int points_per_axis,
                                           double relative_margin = 1e-2);

// Grid whose last-axis nodes sit at fractional cell offset 0.3, so that no
// node lands on the box midline. Used for charts whose parametrization
// collapses along an interior line (polar-type apex of the family charts).
std::vector<Eigen::VectorXd> offset_grid(const Box& box, int points_per_axis,
                                         double relative_margin = 1e-2);

// Deterministic subsample: the first `count` points of an interior grid just
// fine enough to provide them.
std::vector<Eigen::VectorXd> sample_points(const Box& box, int count,
                                           double relative_margin = 1e-2);

// The same immersion watched in a larger product: inserts `extra` zero
// coordinates between the curved-factor block and the line coordinate.
Chart pad_chart(const Chart& chart, int extra);

}  // namespace prodgeo
