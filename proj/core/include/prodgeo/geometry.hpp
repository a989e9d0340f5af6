#pragma once

#include <vector>

#include <Eigen/Core>

#include "prodgeo/chart.hpp"
#include "prodgeo/numerics.hpp"

namespace prodgeo {

// Pointwise adapted frame of a chart: tangent basis from central differences,
// an orthonormal normal frame tangent to the product, and the splitting of
// the vertical direction  d/dt = (pushforward of T) + eta.
struct FrameData {
  Eigen::VectorXd point;    // E^{n+2}
  Eigen::MatrixXd tangent;  // (n+2) x m columns, coordinate pushforwards
  Eigen::MatrixXd metric;   // m x m induced metric, positive definite
  Eigen::MatrixXd normal;   // (n+2) x (n+1-m) columns, unit, mutually orthogonal
  Eigen::VectorXd nu;       // position projected onto the curved factor
  Eigen::VectorXd T;        // coordinates of the tangent part of d/dt
  Eigen::VectorXd eta;      // normal part of d/dt, ambient coordinates

  int codim() const { return int(normal.cols()); }

  Eigen::VectorXd push(const Eigen::VectorXd& coords) const { return tangent * coords; }

  double T_norm2() const { return T.dot(metric * T); }
};

// Second-order data in the frame of FrameData: second fundamental form
// components, shape operators, mean curvature and the normal connection.
struct FundamentalData {
  FrameData frame;
  std::vector<Eigen::MatrixXd> alpha;              // per normal direction a: m x m
  std::vector<Eigen::MatrixXd> shape;              // A_a = g^{-1} alpha_a
  Eigen::VectorXd mean_curvature;                  // frame components of H
  std::vector<Eigen::MatrixXd> normal_connection;  // per axis i: omega[i](a,b) with
                                                   // nabla^perp_i xi_a = sum_b omega[i](a,b) xi_b
};

FrameData frame_at(const Chart& chart, const Eigen::VectorXd& u, const FdConfig& cfg = {});

FundamentalData fundamental_at(const Chart& chart, const Eigen::VectorXd& u,
                               const FdConfig& cfg = {});

// Shape operator of the chart in an arbitrary given normal direction
// (the direction need not belong to the computed frame).
Eigen::MatrixXd shape_operator(const Chart& chart, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& direction, const FdConfig& cfg = {});

// Max-norm residuals of the three compatibility equations of a submanifold
// of the product, evaluated on all coordinate-basis combinations. Curvature
// tensors come from finite differences of the metric and of the normal frame.
struct CompatibilityResiduals {
  double gauss = 0.0;
  double codazzi = 0.0;
  double ricci = 0.0;
  double max() const { return std::max(gauss, std::max(codazzi, ricci)); }
};

CompatibilityResiduals compatibility_residuals(const Chart& chart, const Eigen::VectorXd& u,
                                               const FdConfig& cfg = {});

// Residuals of the four identities tying the chart to the inclusion of the
// product into flat space: the inclusion shape operator, the shape operator
// in the nu direction, the normal-connection relation, and the derivative
// of nu along the submanifold.
struct InclusionResiduals {
  double sffi = 0.0;
  double anu = 0.0;
  double nconns = 0.0;
  double normalnu = 0.0;
  double max() const { return std::max(std::max(sffi, anu), std::max(nconns, normalnu)); }
};

InclusionResiduals inclusion_residuals(const Chart& chart, const Eigen::VectorXd& u,
                                       const FdConfig& cfg = {});

}  // namespace prodgeo
