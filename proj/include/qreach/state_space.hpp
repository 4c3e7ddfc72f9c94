#pragma once

#include <string>
#include <vector>

#include "qreach/group_id.hpp"
#include "qreach/types.hpp"

namespace qreach {

/// Validated density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  /// Throws ValidationError naming `name` and the violated invariant.
  explicit DensityMatrix(ComplexMatrix rho, const Tolerances& tol = {},
                         const std::string& name = "rho");

  Eigen::Index dim() const { return rho_.rows(); }
  const ComplexMatrix& matrix() const { return rho_; }

 private:
  ComplexMatrix rho_;
};

struct SpectralCluster {
  double value = 0.0;
  Eigen::Index multiplicity = 0;
};

/// Eigenvalues grouped into clusters, sorted by descending value.
struct Spectrum {
  std::vector<SpectralCluster> clusters;
  bool ambiguous = false;  ///< some gap lies within a factor 2 of the cluster tolerance
  std::string warning;

  std::vector<Eigen::Index> multiplicities() const;
};

enum class StateKind { CompletelyRandom, PureStateLike, General };

struct StateClass {
  StateKind kind = StateKind::General;
  bool ambiguous = false;
  std::string warning;
};

std::string state_kind_name(StateKind kind);

/// Clusters the eigenvalues of rho: consecutive sorted eigenvalues closer
/// than `tol.cluster` share a cluster.
Spectrum spectrum(const DensityMatrix& rho, const Tolerances& tol = {});

StateClass classify_state(const DensityMatrix& rho, const Tolerances& tol = {});

/// Equal clustered spectra: same multiplicities, values within `tol.cluster`.
bool kinematically_equivalent(const DensityMatrix& rho0, const DensityMatrix& rho1,
                              const Tolerances& tol = {});

/// (J rho J^dagger)^*.
DensityMatrix tilde_transform(const DensityMatrix& rho, const InvariantForm& form,
                              const Tolerances& tol = {});

}  // namespace qreach
