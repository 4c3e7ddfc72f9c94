#include "qreach/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "qreach/linalg.hpp"

namespace qreach {

DensityMatrix::DensityMatrix(ComplexMatrix rho, const Tolerances& tol, const std::string& name)
    : rho_(std::move(rho)) {
  if (!linalg::is_square(rho_) || rho_.rows() == 0)
    throw ValidationError(name + ": density matrix must be square and non-empty");
  if (!linalg::all_finite(rho_)) throw ValidationError(name + ": non-finite entries");
  const double defect = linalg::hermiticity_defect(rho_);
  if (defect > tol.herm * rho_.norm())
    throw ValidationError(name + ": not Hermitian (||rho - rho^dagger|| = " +
                          std::to_string(defect) + ")");
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  const double trace = rho_.trace().real();
  if (std::abs(trace - 1.0) > tol.trace)
    throw ValidationError(name + ": trace is " + std::to_string(trace) + ", expected 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_, Eigen::EigenvaluesOnly);
  const double lowest = es.eigenvalues().minCoeff();
  if (lowest < -tol.psd)
    throw ValidationError(name + ": not positive semidefinite (smallest eigenvalue " +
                          std::to_string(lowest) + ")");
}

std::vector<Eigen::Index> Spectrum::multiplicities() const {
  std::vector<Eigen::Index> out;
  for (const auto& c : clusters) out.push_back(c.multiplicity);
  return out;
}

std::string state_kind_name(StateKind kind) {
  switch (kind) {
    case StateKind::CompletelyRandom: return "CompletelyRandom";
    case StateKind::PureStateLike: return "PureStateLike";
    case StateKind::General: return "General";
  }
  return "General";
}

Spectrum spectrum(const DensityMatrix& rho, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + rho.dim());
  std::sort(ev.begin(), ev.end(), std::greater<>());

  Spectrum s;
  double sum = ev.front();
  Eigen::Index count = 1;
  auto flush = [&] {
    s.clusters.push_back({sum / static_cast<double>(count), count});
    sum = 0.0;
    count = 0;
  };
  for (std::size_t k = 1; k < ev.size(); ++k) {
    const double gap = ev[k - 1] - ev[k];
    if (gap > 0.5 * tol.cluster && gap < 2.0 * tol.cluster) {
      s.ambiguous = true;
      s.warning = "AmbiguousSpectrum: eigenvalue gap " + std::to_string(gap) +
                  " is within a factor 2 of the cluster tolerance";
    }
    if (gap > tol.cluster) flush();
    sum += ev[k];
    ++count;
  }
  flush();
  return s;
}

StateClass classify_state(const DensityMatrix& rho, const Tolerances& tol) {
  const Spectrum s = spectrum(rho, tol);
  StateClass out;
  out.ambiguous = s.ambiguous;
  out.warning = s.warning;
  const Eigen::Index n = rho.dim();
  if (s.clusters.size() == 1) {
    out.kind = StateKind::CompletelyRandom;
  } else if (s.clusters.size() == 2 &&
             std::min(s.clusters[0].multiplicity, s.clusters[1].multiplicity) == 1 &&
             std::max(s.clusters[0].multiplicity, s.clusters[1].multiplicity) == n - 1) {
    out.kind = StateKind::PureStateLike;
  } else {
    out.kind = StateKind::General;
  }
  return out;
}

bool kinematically_equivalent(const DensityMatrix& rho0, const DensityMatrix& rho1,
                              const Tolerances& tol) {
  if (rho0.dim() != rho1.dim()) throw InputError("kinematically_equivalent: dimension mismatch");
  const Spectrum a = spectrum(rho0, tol);
  const Spectrum b = spectrum(rho1, tol);
  if (a.clusters.size() != b.clusters.size()) return false;
  for (std::size_t k = 0; k < a.clusters.size(); ++k) {
    if (a.clusters[k].multiplicity != b.clusters[k].multiplicity) return false;
    if (std::abs(a.clusters[k].value - b.clusters[k].value) > tol.cluster) return false;
  }
  return true;
}

DensityMatrix tilde_transform(const DensityMatrix& rho, const InvariantForm& form,
                              const Tolerances& tol) {
  if (rho.dim() != form.dim()) throw InputError("tilde_transform: dimension mismatch");
  const ComplexMatrix t = (form.j * rho.matrix() * form.j.adjoint()).conjugate();
  return DensityMatrix(t, tol, "tilde(rho)");
}

}  // namespace qreach
