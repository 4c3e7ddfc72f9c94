#pragma once

#include "qreach/lie_engine.hpp"
#include "qreach/state_space.hpp"

namespace qreach {

/// The four real dimensions entering the transitivity-by-dimension test:
/// the action on the class of rho is transitive iff
/// dim U(N) - dim S == dim C_rho - dim (C_rho cap S).
struct TransitivityReport {
  std::size_t dim_un = 0;
  std::size_t dim_s = 0;
  std::size_t dim_centralizer = 0;
  std::size_t dim_intersection = 0;
  bool transitive = false;
};

/// sum_i m_i^2 over the eigenvalue clusters of rho.
std::size_t centralizer_dim(const DensityMatrix& rho, const Tolerances& tol = {});

/// Real dimension of {x in span(basis) : x rho - rho x = 0}.
///
/// Throws ConsistencyError when a singular value of the constraint system lies
/// within a factor of 10 of the rank cutoff.
std::size_t intersection_dim(const DensityMatrix& rho, const LieBasis& basis,
                             const Tolerances& tol = {});

TransitivityReport transitive_by_dimension(const DensityMatrix& rho, const LieBasis& basis,
                                           const Tolerances& tol = {});

}  // namespace qreach
