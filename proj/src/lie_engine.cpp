#include "qreach/lie_engine.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qreach/linalg.hpp"

namespace qreach {

namespace {

void require_hermitian(const ComplexMatrix& h, const std::string& name, const Tolerances& tol) {
  if (!linalg::is_square(h)) throw InputError(name + ": matrix is not square");
  if (h.rows() == 0) throw InputError(name + ": matrix is empty");
  if (!linalg::all_finite(h)) throw ValidationError(name + ": matrix has non-finite entries");
  const double defect = linalg::hermiticity_defect(h);
  if (defect > tol.herm * h.norm())
    throw ValidationError(name + ": matrix is not Hermitian (||H - H^dagger|| = " +
                          std::to_string(defect) + ")");
}

void require_skew_hermitian(const ComplexMatrix& x, const Tolerances& tol) {
  if (!linalg::is_square(x)) throw InputError("generator is not square");
  if (!linalg::all_finite(x)) throw InputError("generator has non-finite entries");
  if (linalg::skew_hermiticity_defect(x) > tol.herm * x.norm())
    throw InputError("generator is not skew-Hermitian");
}

// Incremental orthonormal basis over the real coordinates of skew-Hermitian matrices.
class SpanBuilder {
 public:
  SpanBuilder(Eigen::Index n, double rank_tol)
      : n_(n), rank_tol_(rank_tol), q_(2 * n * n, n * n) {}

  Eigen::Index size() const { return size_; }
  Eigen::Index capacity() const { return n_ * n_; }

  // Returns true when `x` added a new direction. Brackets of unit-norm
  // elements below `rank_tol` in norm are treated as zero; generators are
  // only rejected when exactly zero.
  bool try_admit(const ComplexMatrix& x, bool scale_free = false) {
    const double norm = x.norm();
    if (norm == 0.0 || (!scale_free && norm <= rank_tol_)) return false;
    RealVector v = linalg::to_real(x) / norm;
    // classical Gram-Schmidt, applied twice
    for (int pass = 0; pass < 2; ++pass) {
      if (size_ == 0) break;
      const RealVector c = q_.leftCols(size_).transpose() * v;
      v -= q_.leftCols(size_) * c;
    }
    const double residual = v.norm();
    if (residual <= rank_tol_) return false;
    if (size_ >= capacity())
      throw ConsistencyError("lie_closure: span exceeds N^2 real dimensions");
    q_.col(size_++) = v / residual;
    return true;
  }

  ComplexMatrix element(Eigen::Index k) const { return linalg::from_real(q_.col(k), n_); }

 private:
  Eigen::Index n_;
  double rank_tol_;
  RealMatrix q_;
  Eigen::Index size_ = 0;
};

}  // namespace

ControlSystem::ControlSystem(ComplexMatrix drift, std::vector<ComplexMatrix> controls,
                             const Tolerances& tol)
    : drift_(std::move(drift)), controls_(std::move(controls)) {
  require_hermitian(drift_, "H0", tol);
  for (std::size_t m = 0; m < controls_.size(); ++m) {
    const std::string name = "H" + std::to_string(m + 1);
    require_hermitian(controls_[m], name, tol);
    if (controls_[m].rows() != drift_.rows())
      throw InputError(name + ": dimension differs from H0");
  }
}

std::vector<ComplexMatrix> ControlSystem::hamiltonians() const {
  std::vector<ComplexMatrix> out;
  out.reserve(controls_.size() + 1);
  out.push_back(drift_);
  out.insert(out.end(), controls_.begin(), controls_.end());
  return out;
}

std::vector<ComplexMatrix> ControlSystem::generators() const {
  std::vector<ComplexMatrix> out;
  for (const auto& h : hamiltonians()) out.push_back(Complex(0.0, 1.0) * h);
  return out;
}

LieBasis::LieBasis(Eigen::Index dim_space, std::vector<ComplexMatrix> elements, bool closed)
    : dim_space_(dim_space), elements_(std::move(elements)), closed_(closed) {
  for (const auto& x : elements_)
    if (x.rows() != dim_space_ || x.cols() != dim_space_)
      throw InputError("LieBasis: element dimension mismatch");
}

RealVector LieBasis::coordinates(const ComplexMatrix& x) const {
  RealVector c(static_cast<Eigen::Index>(elements_.size()));
  for (std::size_t k = 0; k < elements_.size(); ++k)
    c(static_cast<Eigen::Index>(k)) = linalg::real_inner(elements_[k], x);
  return c;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!linalg::is_square(a) || a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("commutator: dimension mismatch");
  return a * b - b * a;
}

LieBasis lie_closure(const std::vector<ComplexMatrix>& generators, const Tolerances& tol) {
  if (generators.empty()) throw InputError("lie_closure: no generators");
  const Eigen::Index n = generators.front().rows();
  bool traceless = true;
  for (const auto& x : generators) {
    if (x.rows() != n || x.cols() != n) throw InputError("lie_closure: dimension mismatch");
    require_skew_hermitian(x, tol);
    if (std::abs(x.trace()) > tol.rank * x.norm() * std::sqrt(static_cast<double>(n)))
      traceless = false;
  }

  SpanBuilder span(n, tol.rank);
  for (const auto& x : generators) span.try_admit(x, true);

  // su(N) cannot grow past N^2 - 1 and u(N) past N^2.
  const Eigen::Index ceiling = traceless ? n * n - 1 : n * n;
  std::vector<ComplexMatrix> elems;
  for (Eigen::Index k = 0; k < span.size(); ++k) elems.push_back(span.element(k));

  for (std::size_t j = 1; j < elems.size() && span.size() < ceiling; ++j) {
    for (std::size_t i = 0; i < j && span.size() < ceiling; ++i) {
      if (span.try_admit(commutator(elems[i], elems[j])))
        elems.push_back(span.element(span.size() - 1));
    }
  }
  return LieBasis(n, std::move(elems), true);
}

std::vector<ComplexMatrix> traceless_generators(const ControlSystem& system) {
  const Eigen::Index n = system.dim();
  const Complex i(0.0, 1.0);
  std::vector<ComplexMatrix> out;
  for (const auto& h : system.hamiltonians()) {
    const Complex shift = i * h.trace() / static_cast<double>(n);
    ComplexMatrix x = i * h;
    x.diagonal().array() -= shift;
    out.push_back(std::move(x));
  }
  return out;
}

Membership membership(const LieBasis& basis, const ComplexMatrix& x, const Tolerances& tol) {
  if (x.rows() != basis.dim_space() || x.cols() != basis.dim_space())
    throw InputError("membership: dimension mismatch");
  ComplexMatrix r = x;
  // two projection passes for the same reason as in the closure builder
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : basis.elements()) r -= linalg::real_inner(e, r) * e;
  Membership m;
  m.residual = r.norm();
  m.member = m.residual <= tol.rank * x.norm();
  return m;
}

}  // namespace qreach
