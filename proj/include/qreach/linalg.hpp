#pragma once

#include "qreach/types.hpp"

namespace qreach::linalg {

/// Re Tr(A^dagger B): the real Hilbert-Schmidt inner product.
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-major vec(A) and its inverse.
ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n);

/// Real coordinates [Re vec(A); Im vec(A)] of length 2 * rows * cols.
RealVector to_real(const ComplexMatrix& a);
ComplexMatrix from_real(const RealVector& v, Eigen::Index n);

/// Real form of a complex-linear map: [[Re A, -Im A], [Im A, Re A]].
RealMatrix realify(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_square(const ComplexMatrix& a);
double hermiticity_defect(const ComplexMatrix& a);       ///< ||A - A^dagger||_F
double skew_hermiticity_defect(const ComplexMatrix& a);  ///< ||A + A^dagger||_F
bool all_finite(const ComplexMatrix& a);

/// Null space of a dense matrix computed from its SVD.
///
/// Singular values at or below `cutoff` count as zero. `basis` holds an
/// orthonormal basis of the null space in its columns; `singular_values`
/// are padded with zeros up to the column count so that the smallest
/// entry is always the smallest singular value of the map.
template <typename Matrix>
struct NullSpace {
  Eigen::Index dim = 0;
  Matrix basis;
  RealVector singular_values;
  double cutoff = 0.0;

  double smallest_singular_value() const {
    return singular_values.size() == 0 ? 0.0 : singular_values.minCoeff();
  }
  double largest_singular_value() const {
    return singular_values.size() == 0 ? 0.0 : singular_values.maxCoeff();
  }
  /// Smallest ratio max(s, cutoff) / min(s, cutoff) over all singular values.
  double closest_approach_to_cutoff() const;
};

NullSpace<ComplexMatrix> complex_null_space(const ComplexMatrix& a, double cutoff);
NullSpace<RealMatrix> real_null_space(const RealMatrix& a, double cutoff);

/// Largest singular value of `a` (zero for an empty matrix).
double spectral_norm(const ComplexMatrix& a);
double spectral_norm(const RealMatrix& a);

/// Unitary polar factor: replaces every singular value by one.
ComplexMatrix nearest_unitary(const ComplexMatrix& a);

/// exp(X) for skew-Hermitian X, via the spectral decomposition of -iX.
ComplexMatrix expm_skew_hermitian(const ComplexMatrix& x);

}  // namespace qreach::linalg
