#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qreach/lie_engine.hpp"
#include "qreach/types.hpp"

namespace qreach {

enum class FormSymmetry { Antisymmetric, Symmetric };

/// Matrix J with x^T J + J x = 0 for every generator x, normalized so that
/// J^dagger J = I and the first largest-magnitude entry (row-major) is real
/// and positive.
struct InvariantForm {
  ComplexMatrix j;
  FormSymmetry symmetry = FormSymmetry::Antisymmetric;
  Eigen::Index nullspace_dim = 1;

  Eigen::Index dim() const { return j.rows(); }
};

enum class FormStatus { Found, NoForm, AmbiguousForm, NotUnitary };

struct FormSearch {
  FormStatus status = FormStatus::NoForm;
  Eigen::Index nullspace_dim = 0;  ///< complex dimension of the joint null space
  std::optional<InvariantForm> form;
  std::string diagnostic;
};

/// Stacks the maps J -> x^T J + J x for all generators, computes the joint
/// complex null space and, when it is one-dimensional, returns the
/// normalized form together with its symmetry type.
FormSearch find_invariant_form(const std::vector<ComplexMatrix>& generators,
                               const Tolerances& tol = {});

/// Applies the unitary scaling and phase convention to a raw null vector.
/// Returns std::nullopt when the matrix is not proportional to a unitary or is
/// neither symmetric nor antisymmetric.
std::optional<InvariantForm> normalize_form(const ComplexMatrix& raw, const Tolerances& tol,
                                            std::string* diagnostic = nullptr);

/// [[0, I], [-I, 0]] of size 2l.
ComplexMatrix standard_symplectic_form(Eigen::Index l);

/// [[0, I], [I, 0]] for even n, [[1, 0, 0], [0, 0, I], [0, I, 0]] for odd n.
ComplexMatrix standard_orthogonal_form(Eigen::Index n);

/// Orthonormal basis of all skew-Hermitian x with x^T J + J x = 0.
/// For the standard forms this is sp(l) or so(n).
LieBasis form_preserving_algebra(const ComplexMatrix& j, const Tolerances& tol = {});

/// True when the spectrum of J is {+i (x l), -i (x l)} for antisymmetric
/// forms, or {+1 (x ceil(N/2)), -1 (x floor(N/2))} for symmetric ones, within `eps`.
bool has_textbook_spectrum(const InvariantForm& form, double eps);

enum class GroupKind { FullUnitary, SpecialUnitary, Symplectic, SpecialOrthogonal, Other };

struct GroupClass {
  GroupKind kind = GroupKind::Other;
  Eigen::Index degree = 0;  ///< N for U/SU/SO, l for Sp(l)
  bool central_u1 = false;
  std::size_t algebra_dim = 0;
  std::optional<InvariantForm> form;  ///< set whenever a unique form was found
  bool textbook_spectrum = false;     ///< form spectrum matches the standard J
  std::string diagnostic;
};

/// Real dimension of the Lie algebra of `kind` at `degree`, without the U(1) factor.
std::size_t group_dimension(GroupKind kind, Eigen::Index degree);

/// "U(3)", "Sp(2)xU(1)", "SO(5)", ...
std::string group_name(const GroupClass& g);

/// Decides the dynamical Lie group from the closed algebra and the system.
GroupClass classify_group(const LieBasis& basis, const ControlSystem& system,
                          const Tolerances& tol = {});

}  // namespace qreach
