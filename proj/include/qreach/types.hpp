#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qreach {

using Complex = std::complex<double>;

/// Dense N x N complex matrix; the carrier for Hamiltonians, states, forms and unitaries.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds shared by every module.
///
/// Relative tolerances are measured against the Frobenius norm of the object
/// being tested; absolute ones are noted.
struct Tolerances {
  double herm = 1e-10;     ///< ||H - H^dagger|| <= herm * ||H||
  double orth = 1e-10;     ///< Lie basis orthonormality
  double rank = 1e-9;      ///< span admission / membership, relative to candidate norm
  double nullspace = 1e-9; ///< singular values below nullspace * sigma_max are zero
  double unit = 1e-8;      ///< invariant-form unitarity and symmetry checks
  double cluster = 1e-8;   ///< absolute gap separating eigenvalue clusters
  double trace = 1e-10;    ///< absolute |Tr(rho) - 1|
  double psd = 1e-10;      ///< eigenvalues of rho must be >= -psd
  double verdict = 1e-7;   ///< witness residuals (Frobenius)
};

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied inconsistent or malformed arguments (dimension mismatch etc).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A matrix violates a domain invariant (Hermiticity, trace, positivity).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An internal numerical consistency check failed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace qreach
