#pragma once

#include <cstddef>
#include <vector>

#include "qreach/types.hpp"

namespace qreach {

/// Drift Hamiltonian plus control Hamiltonians, H = H0 + sum_m f_m(t) H_m.
///
/// Only the operators are stored; the control functions are not modelled.
/// Construction validates that every matrix is square, finite, Hermitian and
/// of one common dimension.
class ControlSystem {
 public:
  ControlSystem(ComplexMatrix drift, std::vector<ComplexMatrix> controls,
                const Tolerances& tol = {});

  Eigen::Index dim() const { return drift_.rows(); }
  const ComplexMatrix& drift() const { return drift_; }
  const std::vector<ComplexMatrix>& controls() const { return controls_; }

  /// H0, H1, ..., HM in order.
  std::vector<ComplexMatrix> hamiltonians() const;

  /// iH0, iH1, ..., iHM.
  std::vector<ComplexMatrix> generators() const;

 private:
  ComplexMatrix drift_;
  std::vector<ComplexMatrix> controls_;
};

/// Orthonormal basis (under Re Tr(A^dagger B)) of a real span of skew-Hermitian matrices.
class LieBasis {
 public:
  LieBasis() = default;
  LieBasis(Eigen::Index dim_space, std::vector<ComplexMatrix> elements, bool closed);

  Eigen::Index dim_space() const { return dim_space_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& operator[](std::size_t k) const { return elements_[k]; }
  bool closed() const { return closed_; }

  /// Real coordinates of `x` projected onto the span: c_k = Re Tr(X_k^dagger x).
  RealVector coordinates(const ComplexMatrix& x) const;

 private:
  Eigen::Index dim_space_ = 0;
  std::vector<ComplexMatrix> elements_;
  bool closed_ = false;
};

/// ab - ba.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Orthonormal basis of the smallest real Lie algebra containing `generators`.
///
/// Generators are normalized to unit Frobenius norm and admitted in input
/// order. Every admitted element is then bracketed against all earlier ones
/// in (i, j) order; a bracket joins the basis when its component orthogonal
/// to the current span exceeds `tol.rank` times its norm. The sweep ends when
/// every pair has been bracketed.
LieBasis lie_closure(const std::vector<ComplexMatrix>& generators, const Tolerances& tol = {});

/// x_m = iH_m - (i/N) Tr(H_m) I, one per Hamiltonian of the system.
std::vector<ComplexMatrix> traceless_generators(const ControlSystem& system);

struct Membership {
  bool member = false;
  double residual = 0.0;  ///< norm of the component orthogonal to the span
};

/// Tests whether skew-Hermitian `x` lies in span(basis) to within `tol.rank * ||x||`.
Membership membership(const LieBasis& basis, const ComplexMatrix& x, const Tolerances& tol = {});

}  // namespace qreach
