#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qreach/group_id.hpp"
#include "qreach/state_space.hpp"
#include "qreach/types.hpp"

namespace qreach {

enum class Verdict { Equivalent, NotEquivalent, Inconclusive };

enum class CertificateKind {
  SpectrumMismatch,       ///< rho0 and rho1 are not kinematically equivalent
  TildeSpectrumMismatch,  ///< tilde(rho0) and tilde(rho1) have different spectra
  WordTraceMismatch,      ///< Tr w(rho0, tilde rho0) != Tr w(rho1, tilde rho1)
  EmptyNullSpace,         ///< the linear conjugation constraints admit only U = 0
};

enum class LinearSystem {
  Conjugation,     ///< rho1 U = U rho0 and tilde(rho1) U = U tilde(rho0)
  FormConstrained  ///< rho1 U = U rho0 and J U = conj(U) J, over the reals
};

/// Evidence that no group element maps rho0 to rho1. `lhs` belongs to rho0,
/// `rhs` to rho1; re-evaluating the quantity reproduces |lhs - rhs|.
struct NonEquivalenceCertificate {
  CertificateKind kind = CertificateKind::SpectrumMismatch;
  std::string quantity;
  std::vector<int> word;  ///< WordTraceMismatch letters: 0 = rho, 1 = tilde(rho)
  LinearSystem system = LinearSystem::Conjugation;
  Complex lhs;
  Complex rhs;

  double violation() const { return std::abs(lhs - rhs); }
};

struct ReachabilityVerdict {
  Verdict status = Verdict::Inconclusive;
  std::optional<ComplexMatrix> witness;
  std::optional<NonEquivalenceCertificate> certificate;
  std::vector<std::string> narrative;
};

struct ReachabilityOptions {
  Tolerances tol;
  std::size_t budget = 200;
  std::uint64_t seed = 20020601;
  int word_length = 4;
};

std::string verdict_name(Verdict v);
std::string certificate_kind_name(CertificateKind k);

/// Whether the group acts transitively on every kinematical class of the given type.
bool transitive_on_class(const GroupClass& group, StateKind state);

/// Necessary conditions for simultaneous conjugation of (rho0, tilde rho0) onto
/// (rho1, tilde rho1): equal tilde spectra and equal traces of all words of
/// length <= word_length in the two letters. Returns the first violation
/// exceeding 10 * tol.verdict.
std::optional<NonEquivalenceCertificate> de_necessary_test(const DensityMatrix& rho0,
                                                           const DensityMatrix& rho1,
                                                           const InvariantForm& form,
                                                           const ReachabilityOptions& options = {});

struct LinearSolutions {
  Eigen::Index nullspace_dim = 0;  ///< complex dimension (Conjugation) or real dimension
  std::vector<ComplexMatrix> basis;
  double smallest_singular_value = 0.0;
};

/// Solves rho1 U - U rho0 = 0, tilde(rho1) U - U tilde(rho0) = 0 as a
/// 2N^2 x N^2 complex system.
LinearSolutions linear_system_test(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                   const InvariantForm& form, const Tolerances& tol = {});

/// Real solution space of rho1 U - U rho0 = 0 together with J U - conj(U) J = 0.
/// A unitary U satisfies the second equation iff U^T J U = J.
LinearSolutions form_constrained_solutions(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                           const InvariantForm& form, const Tolerances& tol = {});

/// Checks every witness condition: unitarity, U rho0 U^dagger = rho1 and,
/// with a form, U^T J U = J (plus det U = 1 for symmetric forms).
bool verify_witness(const ComplexMatrix& u, const DensityMatrix& rho0, const DensityMatrix& rho1,
                    const std::optional<InvariantForm>& form, const Tolerances& tol = {});

/// Samples random combinations of the solution basis, projects each onto the
/// nearest unitary and returns the first one passing verify_witness.
std::optional<ComplexMatrix> witness_search(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                            const std::optional<InvariantForm>& form,
                                            const ReachabilityOptions& options = {});

/// Witness V1 V0^dagger built from matched eigenvector bases, with det fixed to 1.
ComplexMatrix eigenbasis_witness(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Full decision pipeline for the pair under the group (and form, if any).
ReachabilityVerdict decide_reachability(const GroupClass& group,
                                        const std::optional<InvariantForm>& form,
                                        const DensityMatrix& rho0, const DensityMatrix& rho1,
                                        const ReachabilityOptions& options = {});

/// Recomputes the certificate's quantity from scratch; returns |lhs - rhs|.
double recheck_certificate(const NonEquivalenceCertificate& cert, const DensityMatrix& rho0,
                           const DensityMatrix& rho1, const std::optional<InvariantForm>& form,
                           const ReachabilityOptions& options = {});

}  // namespace qreach
