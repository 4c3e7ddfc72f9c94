#include "qreach/group_id.hpp"

#include <cmath>
#include <string>

#include "qreach/linalg.hpp"

namespace qreach {

namespace {

bool has_nonzero_trace(const ComplexMatrix& h, const Tolerances& tol) {
  const double scale = h.norm() * std::sqrt(static_cast<double>(h.rows()));
  return std::abs(h.trace()) > tol.rank * scale;
}

std::string status_text(FormStatus s) {
  switch (s) {
    case FormStatus::Found: return "unique invariant form";
    case FormStatus::NoForm: return "no invariant form (trivial null space)";
    case FormStatus::AmbiguousForm: return "ambiguous invariant form (null space dimension > 1)";
    case FormStatus::NotUnitary: return "null-space element is not proportional to a unitary";
  }
  return "unknown";
}

}  // namespace

std::optional<InvariantForm> normalize_form(const ComplexMatrix& raw, const Tolerances& tol,
                                            std::string* diagnostic) {
  auto fail = [&](const std::string& why) -> std::optional<InvariantForm> {
    if (diagnostic) *diagnostic = why;
    return std::nullopt;
  };
  const Eigen::Index n = raw.rows();
  const double rn = static_cast<double>(n);
  const double scale2 = raw.squaredNorm() / rn;
  if (!(scale2 > 0.0)) return fail("form is zero");
  ComplexMatrix j = raw / std::sqrt(scale2);

  const double unitarity = (j.adjoint() * j - ComplexMatrix::Identity(n, n)).norm();
  if (unitarity > tol.unit * std::sqrt(rn))
    return fail("form is not proportional to a unitary (||J^dagger J - I|| = " +
                std::to_string(unitarity) + ")");

  // global phase: first (row-major) entry of largest magnitude becomes real positive
  const double largest = j.cwiseAbs().maxCoeff();
  Complex pivot(0.0, 0.0);
  for (Eigen::Index r = 0; r < n && pivot == Complex(0.0, 0.0); ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      if (std::abs(j(r, c)) >= largest * (1.0 - tol.unit)) {
        pivot = j(r, c);
        break;
      }
  j *= std::conj(pivot) / std::abs(pivot);

  const double anti = (j.transpose() + j).norm();
  const double sym = (j.transpose() - j).norm();
  const double bound = tol.unit * j.norm();
  InvariantForm form;
  if (anti <= sym && anti <= bound) {
    form.symmetry = FormSymmetry::Antisymmetric;
    form.j = 0.5 * (j - j.transpose());
  } else if (sym < anti && sym <= bound) {
    form.symmetry = FormSymmetry::Symmetric;
    form.j = 0.5 * (j + j.transpose());
  } else {
    return fail("form is neither symmetric nor antisymmetric");
  }
  return form;
}

FormSearch find_invariant_form(const std::vector<ComplexMatrix>& generators,
                               const Tolerances& tol) {
  if (generators.empty()) throw InputError("find_invariant_form: no generators");
  const Eigen::Index n = generators.front().rows();
  const Eigen::Index n2 = n * n;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  std::vector<ComplexMatrix> blocks;
  for (const auto& x : generators) {
    if (x.rows() != n || x.cols() != n)
      throw InputError("find_invariant_form: dimension mismatch");
    if (linalg::skew_hermiticity_defect(x) > tol.herm * x.norm())
      throw InputError("find_invariant_form: generator is not skew-Hermitian");
    const double norm = x.norm();
    if (norm == 0.0) continue;
    const ComplexMatrix xt = x.transpose() / norm;
    // vec(x^T J) = (I kron x^T) vec J,  vec(J x) = (x^T kron I) vec J
    blocks.push_back(linalg::kron(id, xt) + linalg::kron(xt, id));
  }

  ComplexMatrix stacked(static_cast<Eigen::Index>(blocks.size()) * n2, n2);
  for (std::size_t m = 0; m < blocks.size(); ++m)
    stacked.middleRows(static_cast<Eigen::Index>(m) * n2, n2) = blocks[m];

  FormSearch result;
  const double sigma_max = stacked.size() ? linalg::spectral_norm(stacked) : 0.0;
  const auto ns = linalg::complex_null_space(stacked, tol.nullspace * sigma_max);
  result.nullspace_dim = ns.dim;
  if (ns.dim == 0) {
    result.status = FormStatus::NoForm;
  } else if (ns.dim > 1) {
    result.status = FormStatus::AmbiguousForm;
  } else {
    const ComplexMatrix raw = linalg::unvec(ns.basis.col(0), n);
    std::string why;
    result.form = normalize_form(raw, tol, &why);
    if (result.form) {
      result.status = FormStatus::Found;
      result.form->nullspace_dim = 1;
    } else {
      result.status = why.find("unitary") != std::string::npos ? FormStatus::NotUnitary
                                                               : FormStatus::AmbiguousForm;
      result.diagnostic = why;
      return result;
    }
  }
  result.diagnostic = status_text(result.status);
  return result;
}

ComplexMatrix standard_symplectic_form(Eigen::Index l) {
  ComplexMatrix j = ComplexMatrix::Zero(2 * l, 2 * l);
  j.topRightCorner(l, l).setIdentity();
  j.bottomLeftCorner(l, l) = -ComplexMatrix::Identity(l, l);
  return j;
}

ComplexMatrix standard_orthogonal_form(Eigen::Index n) {
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  const Eigen::Index l = n / 2;
  const Eigen::Index off = n % 2;
  if (off) j(0, 0) = 1.0;
  j.block(off, off + l, l, l).setIdentity();
  j.block(off + l, off, l, l).setIdentity();
  return j;
}

LieBasis form_preserving_algebra(const ComplexMatrix& j, const Tolerances& tol) {
  const Eigen::Index n = j.rows();
  const Eigen::Index n2 = n * n;
  RealMatrix system(4 * n2, 2 * n2);
  for (Eigen::Index k = 0; k < 2 * n2; ++k) {
    const ComplexMatrix x = linalg::from_real(RealVector::Unit(2 * n2, k), n);
    system.col(k).head(2 * n2) = linalg::to_real(x + x.adjoint());
    system.col(k).tail(2 * n2) = linalg::to_real(x.transpose() * j + j * x);
  }
  const double sigma_max = linalg::spectral_norm(system);
  const auto ns = linalg::real_null_space(system, tol.nullspace * sigma_max);
  std::vector<ComplexMatrix> elems;
  for (Eigen::Index k = 0; k < ns.dim; ++k) elems.push_back(linalg::from_real(ns.basis.col(k), n));
  return LieBasis(n, std::move(elems), true);
}

bool has_textbook_spectrum(const InvariantForm& form, double eps) {
  const Eigen::Index n = form.dim();
  Eigen::ComplexEigenSolver<ComplexMatrix> es(form.j, false);
  const ComplexVector ev = es.eigenvalues();
  const Complex up = form.symmetry == FormSymmetry::Antisymmetric ? Complex(0, 1) : Complex(1, 0);
  Eigen::Index plus = 0;
  Eigen::Index minus = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k) - up) <= eps) ++plus;
    else if (std::abs(ev(k) + up) <= eps) ++minus;
    else return false;
  }
  if (form.symmetry == FormSymmetry::Antisymmetric) return n % 2 == 0 && plus == n / 2 && minus == n / 2;
  return plus == (n + 1) / 2 && minus == n / 2;
}

std::size_t group_dimension(GroupKind kind, Eigen::Index degree) {
  const auto d = static_cast<std::size_t>(degree);
  switch (kind) {
    case GroupKind::FullUnitary: return d * d;
    case GroupKind::SpecialUnitary: return d * d - 1;
    case GroupKind::Symplectic: return d * (2 * d + 1);
    case GroupKind::SpecialOrthogonal: return d * (d - 1) / 2;
    case GroupKind::Other: return 0;
  }
  return 0;
}

std::string group_name(const GroupClass& g) {
  const std::string deg = std::to_string(g.degree);
  std::string name;
  switch (g.kind) {
    case GroupKind::FullUnitary: name = "U(" + deg + ")"; break;
    case GroupKind::SpecialUnitary: name = "SU(" + deg + ")"; break;
    case GroupKind::Symplectic: name = "Sp(" + deg + ")"; break;
    case GroupKind::SpecialOrthogonal: name = "SO(" + deg + ")"; break;
    case GroupKind::Other: return "Other";
  }
  if (g.central_u1) name += "xU(1)";
  return name;
}

GroupClass classify_group(const LieBasis& basis, const ControlSystem& system,
                          const Tolerances& tol) {
  if (!basis.closed()) throw InputError("classify_group: basis is not closed");
  const Eigen::Index n = system.dim();
  if (basis.dim_space() != n) throw InputError("classify_group: dimension mismatch");
  const std::size_t dim_l = basis.size();
  const auto full = static_cast<std::size_t>(n * n);

  bool any_trace = false;
  for (const auto& h : system.hamiltonians()) any_trace = any_trace || has_nonzero_trace(h, tol);

  GroupClass g;
  g.algebra_dim = dim_l;
  if (dim_l == full) {
    g.kind = GroupKind::FullUnitary;
    g.degree = n;
    g.diagnostic = "dim L = N^2";
    return g;
  }
  // su(2) = sp(1): N = 2 falls through to the form search and reports Sp(1)
  if (dim_l + 1 == full && !any_trace && n > 2) {
    g.kind = GroupKind::SpecialUnitary;
    g.degree = n;
    g.diagnostic = "dim L = N^2 - 1 with traceless generators";
    return g;
  }

  const FormSearch search = find_invariant_form(traceless_generators(system), tol);
  if (search.status != FormStatus::Found) {
    g.diagnostic = search.diagnostic;
    return g;
  }
  g.form = search.form;
  g.textbook_spectrum = has_textbook_spectrum(*g.form, tol.unit);

  GroupKind kind = GroupKind::SpecialOrthogonal;
  Eigen::Index degree = n;
  if (g.form->symmetry == FormSymmetry::Antisymmetric) {
    if (n % 2 != 0) {
      g.diagnostic = "antisymmetric form in odd dimension";
      return g;
    }
    kind = GroupKind::Symplectic;
    degree = n / 2;
  }
  const std::size_t sub = group_dimension(kind, degree);
  GroupClass candidate = g;
  candidate.kind = kind;
  candidate.degree = degree;
  if (dim_l == sub) {
    candidate.diagnostic = "invariant form and dim L agree";
    return candidate;
  }
  if (dim_l == sub + 1 && any_trace) {
    candidate.central_u1 = true;
    candidate.diagnostic = "invariant form and dim L agree with a central U(1)";
    return candidate;
  }
  g.diagnostic = "invariant form suggests " + group_name(candidate) + " (dim " +
                 std::to_string(sub) + ") but dim L = " + std::to_string(dim_l);
  return g;
}

}  // namespace qreach
