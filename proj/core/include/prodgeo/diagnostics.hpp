#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prodgeo/geometry.hpp"

namespace prodgeo {

// One named residual check over a grid.
struct DiagnosticReport {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string grid;
};

// Span of second-fundamental-form values at a point, in the normal frame.
struct NormalSubspace {
  Eigen::MatrixXd basis;  // columns, orthonormal
  int dimension = 0;
  Eigen::VectorXd singular_values;
};

// max_{i,j,a} |alpha_ij^a - g_ij H^a|
double umbilicity_residual(const Chart&, const Eigen::VectorXd& u, const FdConfig& = {});
double umbilicity_residual(const FundamentalData&);

// Deviation of the normalized T from being an eigenvector of every shape
// operator; empty when |T| < 1e-8 (not applicable at slice-tangent points).
std::optional<double> class_a_residual(const Chart&, const Eigen::VectorXd& u,
                                       const FdConfig& = {});
std::optional<double> class_a_residual(const FundamentalData&);

// Deviation of every shape operator from being scalar on {T}^perp.
std::optional<double> restricted_umbilicity_residual(const Chart&, const Eigen::VectorXd& u,
                                                     const FdConfig& = {});

struct EtaParallelResiduals {
  double full = 0.0;          // sup over unit X of |nabla^perp_X eta|
  double along_t_perp = 0.0;  // sup restricted to X orthogonal to T
  double cross_check = 0.0;   // disagreement with alpha(., T)
};
EtaParallelResiduals parallel_eta_residual(const Chart&, const Eigen::VectorXd& u,
                                           const FdConfig& = {});

// Largest commutator of the shape-operator family (metric-orthonormalized).
double flat_normal_bundle_residual(const Chart&, const Eigen::VectorXd& u, const FdConfig& = {});
double flat_normal_bundle_residual(const FundamentalData&);

// Largest commutator of the shape operators against the flat-inclusion shape
// operator in the nu direction.
double nu_commutator_residual(const Chart&, const Eigen::VectorXd& u, const FdConfig& = {});

// Pairwise commutators of the family extended by the nu-direction operator.
double extended_commutator_residual(const Chart&, const Eigen::VectorXd& u, const FdConfig& = {});

NormalSubspace first_normal_space(const Chart&, const Eigen::VectorXd& u, double rank_tol = 1e-6,
                                  const FdConfig& = {});

struct ReductionCheck {
  int ell = 0;  // rank of N1 + span{eta} over the grid
  double parallel_residual = 0.0;
  double dajczer_i_residual = 0.0;   // derivative of the normal curvature on the complement
  double dajczer_ii_residual = 0.0;  // mean-curvature derivative escaping the bundle
  int fitted_dim = 0;                // dimension of the linear hull of the image + vertical
  int expected_fitted_dim = 0;       // m + ell + 1
};
ReductionCheck codimension_reduction_check(const Chart&, const std::vector<Eigen::VectorXd>& grid,
                                           double rank_tol = 1e-6, const FdConfig& = {});

// Quadratic form 2<alpha(X,Y),H> - eps <X,T><Y,T> on a surface chart.
double abresch_rosenberg_Q(const Chart&, const Eigen::VectorXd& u, const Eigen::VectorXd& X,
                           const Eigen::VectorXd& Y, const FdConfig& = {});

struct CheckOptions {
  int grid_points = 11;
  double margin = 1e-2;
  int compat_samples = 20;
  bool offset_last_axis = false;  // dodge an interior parametrization collapse
  Tolerances tol;
  FdConfig fd;
};

// The evaluation grid the options describe.
std::vector<Eigen::VectorXd> standard_grid(const Chart&, const CheckOptions&);

// Universal identity checks every chart of the product space must satisfy:
// surface membership, frame algebra, the three compatibility equations and
// the four inclusion identities.
std::vector<DiagnosticReport> identity_checks(const Chart&, const CheckOptions&);

// Max of a pointwise residual over the standard grid, wrapped as a report.
// The functional may return an empty optional to skip a point.
DiagnosticReport sweep_residual(
    const std::string& name, const Chart&, const std::vector<Eigen::VectorXd>& grid, double tol,
    const std::function<std::optional<double>(const Chart&, const Eigen::VectorXd&)>& fn);

}  // namespace prodgeo
