#include "qreach/centralizer.hpp"

#include <string>

#include "qreach/linalg.hpp"

namespace qreach {

std::size_t centralizer_dim(const DensityMatrix& rho, const Tolerances& tol) {
  std::size_t total = 0;
  for (const auto& c : spectrum(rho, tol).clusters) {
    const auto m = static_cast<std::size_t>(c.multiplicity);
    total += m * m;
  }
  return total;
}

std::size_t intersection_dim(const DensityMatrix& rho, const LieBasis& basis,
                             const Tolerances& tol) {
  if (!basis.closed()) throw InputError("intersection_dim: basis is not closed");
  const Eigen::Index n = rho.dim();
  if (basis.dim_space() != n) throw InputError("intersection_dim: dimension mismatch");
  const auto d = static_cast<Eigen::Index>(basis.size());
  if (d == 0) return 0;

  // column k holds the real coordinates of [X_k, rho]
  RealMatrix system(2 * n * n, d);
  for (Eigen::Index k = 0; k < d; ++k)
    system.col(k) = linalg::to_real(commutator(basis[static_cast<std::size_t>(k)], rho.matrix()));

  // basis elements have unit norm, so ||[X, rho]|| is measured against ||rho||
  const double cutoff = tol.rank * rho.matrix().norm();
  const auto ns = linalg::real_null_space(system, cutoff);
  if (ns.closest_approach_to_cutoff() < 10.0)
    throw ConsistencyError("intersection_dim: a singular value sits within a factor 10 of the "
                           "rank cutoff " + std::to_string(cutoff));
  return static_cast<std::size_t>(ns.dim);
}

TransitivityReport transitive_by_dimension(const DensityMatrix& rho, const LieBasis& basis,
                                           const Tolerances& tol) {
  TransitivityReport r;
  const auto n = static_cast<std::size_t>(rho.dim());
  r.dim_un = n * n;
  r.dim_s = basis.size();
  r.dim_centralizer = centralizer_dim(rho, tol);
  r.dim_intersection = intersection_dim(rho, basis, tol);
  const auto lhs = static_cast<long long>(r.dim_un) - static_cast<long long>(r.dim_s);
  const auto rhs =
      static_cast<long long>(r.dim_centralizer) - static_cast<long long>(r.dim_intersection);
  r.transitive = lhs == rhs;
  return r;
}

}  // namespace qreach
