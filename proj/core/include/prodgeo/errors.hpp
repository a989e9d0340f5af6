#pragma once

#include <stdexcept>
#include <string>

namespace prodgeo {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A chart point failed the product-space membership test.
struct OffSurface : Error { using Error::Error; };

// Induced metric is not usably positive definite (cond > 1e10 or rank loss).
struct SingularMetric : Error { using Error::Error; };

// A finite-difference stencil left the parameter box.
struct StencilOutOfDomain : Error { using Error::Error; };

struct WrongDimension : Error { using Error::Error; };

// Operation restricted to surface charts.
struct UnsupportedDimension : Error { using Error::Error; };

// Rank of N1 + span{eta} jumps across the evaluation grid.
struct NonConstantRank : Error { using Error::Error; };

// Supplied normal sections are not orthonormal/parallel along the base.
struct FrameNotParallel : Error { using Error::Error; };

// Tube evaluated at an irregular point (det P_s below threshold).
struct SingularP : Error { using Error::Error; };

// A profile curve violates its quadric constraint.
struct ConstraintViolated : Error { using Error::Error; };

struct KindMismatch : Error { using Error::Error; };

// Parameter pair outside the admissible set, or inverse out of range.
struct OutOfDomain : Error { using Error::Error; };

struct OutOfInterval : Error { using Error::Error; };

struct ZeroVector : Error { using Error::Error; };

// The reflected chart requires q != 0.
struct QZeroForZ : Error { using Error::Error; };

struct BranchUnavailable : Error { using Error::Error; };

struct IntervalLeavesDomain : Error { using Error::Error; };

}  // namespace prodgeo
