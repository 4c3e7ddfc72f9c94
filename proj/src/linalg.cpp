#include "qreach/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qreach::linalg {

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Re Tr(A^dagger B) = sum_ij Re(conj(a_ij) b_ij)
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

ComplexVector vec(const ComplexMatrix& a) {
  return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n) {
  if (v.size() != n * n) throw InputError("unvec: length is not n*n");
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

RealVector to_real(const ComplexMatrix& a) {
  const Eigen::Index len = a.size();
  RealVector out(2 * len);
  const ComplexVector v = vec(a);
  out.head(len) = v.real();
  out.tail(len) = v.imag();
  return out;
}

ComplexMatrix from_real(const RealVector& v, Eigen::Index n) {
  const Eigen::Index len = n * n;
  if (v.size() != 2 * len) throw InputError("from_real: length is not 2*n*n");
  ComplexVector c(len);
  for (Eigen::Index k = 0; k < len; ++k) c(k) = Complex(v(k), v(len + k));
  return unvec(c, n);
}

RealMatrix realify(const ComplexMatrix& a) {
  const Eigen::Index r = a.rows();
  const Eigen::Index c = a.cols();
  RealMatrix out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = a.real();
  out.topRightCorner(r, c) = -a.imag();
  out.bottomLeftCorner(r, c) = a.imag();
  out.bottomRightCorner(r, c) = a.real();
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_square(const ComplexMatrix& a) { return a.rows() == a.cols(); }

double hermiticity_defect(const ComplexMatrix& a) { return (a - a.adjoint()).norm(); }

double skew_hermiticity_defect(const ComplexMatrix& a) { return (a + a.adjoint()).norm(); }

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const Complex z = a.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

template <typename Matrix>
double NullSpace<Matrix>::closest_approach_to_cutoff() const {
  double best = std::numeric_limits<double>::infinity();
  if (cutoff <= 0.0) return best;
  for (Eigen::Index k = 0; k < singular_values.size(); ++k) {
    const double s = singular_values(k);
    if (s <= 0.0) continue;
    best = std::min(best, std::max(s, cutoff) / std::min(s, cutoff));
  }
  return best;
}

template struct NullSpace<ComplexMatrix>;
template struct NullSpace<RealMatrix>;

namespace {

template <typename Matrix>
NullSpace<Matrix> null_space_impl(const Matrix& a, double cutoff) {
  NullSpace<Matrix> result;
  result.cutoff = cutoff;
  const Eigen::Index cols = a.cols();
  if (cols == 0) {
    result.basis = Matrix(0, 0);
    return result;
  }
  if (a.rows() == 0) {
    result.dim = cols;
    result.basis = Matrix::Identity(cols, cols);
    result.singular_values = RealVector::Zero(cols);
    return result;
  }
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  result.singular_values = RealVector::Zero(cols);
  result.singular_values.head(s.size()) = s;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > cutoff) ++rank;
  result.dim = cols - rank;
  result.basis = svd.matrixV().rightCols(result.dim);
  return result;
}

}  // namespace

NullSpace<ComplexMatrix> complex_null_space(const ComplexMatrix& a, double cutoff) {
  return null_space_impl(a, cutoff);
}

NullSpace<RealMatrix> real_null_space(const RealMatrix& a, double cutoff) {
  return null_space_impl(a, cutoff);
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double spectral_norm(const RealMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<RealMatrix> svd(a);
  return svd.singularValues()(0);
}

ComplexMatrix nearest_unitary(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix expm_skew_hermitian(const ComplexMatrix& x) {
  const ComplexMatrix h = Complex(0.0, -1.0) * x;
  const ComplexMatrix herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(herm);
  const RealVector& lambda = eig.eigenvalues();
  ComplexVector phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) phases(k) = std::polar(1.0, lambda(k));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace qreach::linalg
