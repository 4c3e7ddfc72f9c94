#include "qreach/reachability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "qreach/linalg.hpp"

namespace qreach {

namespace {

RealVector sorted_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

// Index of the largest |a_k - b_k|.
Eigen::Index worst_index(const RealVector& a, const RealVector& b) {
  Eigen::Index k = 0;
  (a - b).cwiseAbs().maxCoeff(&k);
  return k;
}

std::string word_text(const std::vector<int>& word) {
  std::string out = "Tr(";
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += " ";
    out += word[k] ? "rho~" : "rho";
  }
  return out + ")";
}

Complex word_trace(const std::vector<int>& word, const ComplexMatrix& rho,
                   const ComplexMatrix& tilde) {
  ComplexMatrix prod = word[0] ? tilde : rho;
  for (std::size_t k = 1; k < word.size(); ++k) prod = prod * (word[k] ? tilde : rho);
  return prod.trace();
}

ComplexMatrix conjugation_system(const ComplexMatrix& rho0, const ComplexMatrix& rho1) {
  const Eigen::Index n = rho0.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  // vec(rho1 U) = (I kron rho1) vec U,  vec(U rho0) = (rho0^T kron I) vec U
  return linalg::kron(id, rho1) - linalg::kron(rho0.transpose(), id);
}

RealMatrix form_constrained_system(const ComplexMatrix& rho0, const ComplexMatrix& rho1,
                                   const ComplexMatrix& j) {
  const Eigen::Index n = rho0.rows();
  const Eigen::Index n2 = n * n;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix p = linalg::kron(id, j);              // vec(J U)
  const ComplexMatrix k = linalg::kron(j.transpose(), id);  // vec(conj(U) J) in terms of vec(conj U)
  const ComplexMatrix q = p - k;
  const ComplexMatrix r = p + k;
  RealMatrix out(4 * n2, 2 * n2);
  out.topRows(2 * n2) = linalg::realify(conjugation_system(rho0, rho1));
  // u = x + i y:  P u - K conj(u) = (P - K) x + i (P + K) y
  out.block(2 * n2, 0, n2, n2) = q.real();
  out.block(2 * n2, n2, n2, n2) = -r.imag();
  out.block(3 * n2, 0, n2, n2) = q.imag();
  out.block(3 * n2, n2, n2, n2) = r.real();
  return out;
}

double null_cutoff(double sigma_max, const Tolerances& tol) {
  return tol.nullspace * std::max(sigma_max, 1.0);
}

// Strict lexicographic order on entries, used to evaluate pairs in a fixed orientation.
bool lexicographically_less(const ComplexMatrix& a, const ComplexMatrix& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const Complex x = a.data()[k];
    const Complex y = b.data()[k];
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

ReachabilityVerdict decide_oriented(const GroupClass& group,
                                    const std::optional<InvariantForm>& form,
                                    const DensityMatrix& rho0, const DensityMatrix& rho1,
                                    const ReachabilityOptions& options) {
  const Tolerances& tol = options.tol;
  ReachabilityVerdict v;
  auto note = [&](std::string s) { v.narrative.push_back(std::move(s)); };

  note("group: " + group_name(group));
  if (!kinematically_equivalent(rho0, rho1, tol)) {
    const RealVector a = sorted_eigenvalues(rho0.matrix());
    const RealVector b = sorted_eigenvalues(rho1.matrix());
    const Eigen::Index k = worst_index(a, b);
    NonEquivalenceCertificate cert;
    cert.kind = CertificateKind::SpectrumMismatch;
    cert.quantity = "eigenvalue " + std::to_string(k) + " (ascending)";
    cert.lhs = a(k);
    cert.rhs = b(k);
    if (cert.violation() > 10.0 * tol.verdict) {
      note("spectra differ: not kinematically equivalent");
      v.status = Verdict::NotEquivalent;
      v.certificate = cert;
    } else {
      note("spectra cluster differently but agree to within the certification threshold");
      v.status = Verdict::Inconclusive;
    }
    return v;
  }
  note("kinematically equivalent");

  if ((rho0.matrix() - rho1.matrix()).norm() <= 0.1 * tol.verdict) {
    v.witness = ComplexMatrix::Identity(rho0.dim(), rho0.dim());
    if (verify_witness(*v.witness, rho0, rho1, form, tol)) {
      note("states coincide; identity is a witness");
      v.status = Verdict::Equivalent;
      return v;
    }
    v.witness.reset();
  }

  const StateClass state = classify_state(rho0, tol);
  note("state type: " + state_kind_name(state.kind));
  if (state.ambiguous) note(state.warning);

  const bool unitary_group =
      group.kind == GroupKind::FullUnitary || group.kind == GroupKind::SpecialUnitary;
  const bool form_group =
      form && (group.kind == GroupKind::Symplectic || group.kind == GroupKind::SpecialOrthogonal);

  if (transitive_on_class(group, state.kind)) {
    note("group acts transitively on this class");
    v.status = Verdict::Equivalent;
    if (unitary_group) {
      ComplexMatrix u = eigenbasis_witness(rho0, rho1);
      if (verify_witness(u, rho0, rho1, std::nullopt, tol)) {
        v.witness = std::move(u);
        note("witness built from matched eigenvector bases");
      }
    } else if (form_group) {
      v.witness = witness_search(rho0, rho1, form, options);
      note(v.witness ? "witness found by null-space sampling" : "no explicit witness found");
    }
    return v;
  }
  note("group is not transitive on this class");

  if (form) {
    if (auto cert = de_necessary_test(rho0, rho1, *form, options)) {
      note("simultaneous-conjugation invariant violated: " + cert->quantity);
      v.status = Verdict::NotEquivalent;
      v.certificate = std::move(cert);
      return v;
    }
    note("tilde spectra and word traces agree");

    const LinearSolutions lin = linear_system_test(rho0, rho1, *form, tol);
    note("conjugation system null space: " + std::to_string(lin.nullspace_dim));
    if (lin.nullspace_dim == 0 && lin.smallest_singular_value > 10.0 * tol.verdict) {
      NonEquivalenceCertificate cert;
      cert.kind = CertificateKind::EmptyNullSpace;
      cert.system = LinearSystem::Conjugation;
      cert.quantity = "smallest singular value of the conjugation system";
      cert.lhs = lin.smallest_singular_value;
      cert.rhs = 0.0;
      v.status = Verdict::NotEquivalent;
      v.certificate = cert;
      return v;
    }

    const LinearSolutions con = form_constrained_solutions(rho0, rho1, *form, tol);
    note("form-constrained null space (real): " + std::to_string(con.nullspace_dim));
    if (con.nullspace_dim == 0 && con.smallest_singular_value > 10.0 * tol.verdict) {
      NonEquivalenceCertificate cert;
      cert.kind = CertificateKind::EmptyNullSpace;
      cert.system = LinearSystem::FormConstrained;
      cert.quantity = "smallest singular value of the form-constrained system";
      cert.lhs = con.smallest_singular_value;
      cert.rhs = 0.0;
      v.status = Verdict::NotEquivalent;
      v.certificate = cert;
      return v;
    }

    if (form_group) {
      if (auto u = witness_search(rho0, rho1, form, options)) {
        note("witness found by null-space sampling");
        v.status = Verdict::Equivalent;
        v.witness = std::move(u);
        return v;
      }
      note("no witness within budget " + std::to_string(options.budget));
    } else {
      note("group is a proper subgroup of the form-preserving group; witnesses cannot be certified");
    }
  } else {
    note("no invariant form available");
  }
  v.status = Verdict::Inconclusive;
  return v;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "Equivalent";
    case Verdict::NotEquivalent: return "NotEquivalent";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::SpectrumMismatch: return "SpectrumMismatch";
    case CertificateKind::TildeSpectrumMismatch: return "TildeSpectrumMismatch";
    case CertificateKind::WordTraceMismatch: return "WordTraceMismatch";
    case CertificateKind::EmptyNullSpace: return "EmptyNullSpace";
  }
  return "";
}

bool transitive_on_class(const GroupClass& group, StateKind state) {
  switch (group.kind) {
    case GroupKind::FullUnitary:
    case GroupKind::SpecialUnitary:
      return true;
    case GroupKind::Symplectic:
      return state == StateKind::CompletelyRandom || state == StateKind::PureStateLike;
    case GroupKind::SpecialOrthogonal:
    case GroupKind::Other:
      return state == StateKind::CompletelyRandom;
  }
  return false;
}

std::optional<NonEquivalenceCertificate> de_necessary_test(const DensityMatrix& rho0,
                                                           const DensityMatrix& rho1,
                                                           const InvariantForm& form,
                                                           const ReachabilityOptions& options) {
  const Tolerances& tol = options.tol;
  if (rho0.dim() != rho1.dim()) throw InputError("de_necessary_test: dimension mismatch");
  const double threshold = 10.0 * tol.verdict;
  const ComplexMatrix t0 = tilde_transform(rho0, form, tol).matrix();
  const ComplexMatrix t1 = tilde_transform(rho1, form, tol).matrix();

  const RealVector s0 = sorted_eigenvalues(t0);
  const RealVector s1 = sorted_eigenvalues(t1);
  const Eigen::Index k = worst_index(s0, s1);
  if (std::abs(s0(k) - s1(k)) > threshold) {
    NonEquivalenceCertificate cert;
    cert.kind = CertificateKind::TildeSpectrumMismatch;
    cert.quantity = "eigenvalue " + std::to_string(k) + " of tilde(rho) (ascending)";
    cert.lhs = s0(k);
    cert.rhs = s1(k);
    return cert;
  }

  for (int len = 1; len <= options.word_length; ++len) {
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      std::vector<int> word(static_cast<std::size_t>(len));
      for (int p = 0; p < len; ++p) word[static_cast<std::size_t>(p)] = (mask >> (len - 1 - p)) & 1u;
      const Complex a = word_trace(word, rho0.matrix(), t0);
      const Complex b = word_trace(word, rho1.matrix(), t1);
      if (std::abs(a - b) > threshold) {
        NonEquivalenceCertificate cert;
        cert.kind = CertificateKind::WordTraceMismatch;
        cert.quantity = word_text(word);
        cert.word = std::move(word);
        cert.lhs = a;
        cert.rhs = b;
        return cert;
      }
    }
  }
  return std::nullopt;
}

LinearSolutions linear_system_test(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                   const InvariantForm& form, const Tolerances& tol) {
  const Eigen::Index n = rho0.dim();
  if (rho1.dim() != n || form.dim() != n) throw InputError("linear_system_test: dimension mismatch");
  const Eigen::Index n2 = n * n;
  const ComplexMatrix t0 = tilde_transform(rho0, form, tol).matrix();
  const ComplexMatrix t1 = tilde_transform(rho1, form, tol).matrix();
  ComplexMatrix a(2 * n2, n2);
  a.topRows(n2) = conjugation_system(rho0.matrix(), rho1.matrix());
  a.bottomRows(n2) = conjugation_system(t0, t1);

  const auto ns = linalg::complex_null_space(a, null_cutoff(linalg::spectral_norm(a), tol));
  LinearSolutions out;
  out.nullspace_dim = ns.dim;
  out.smallest_singular_value = ns.smallest_singular_value();
  for (Eigen::Index k = 0; k < ns.dim; ++k) out.basis.push_back(linalg::unvec(ns.basis.col(k), n));
  return out;
}

LinearSolutions form_constrained_solutions(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                           const InvariantForm& form, const Tolerances& tol) {
  const Eigen::Index n = rho0.dim();
  if (rho1.dim() != n || form.dim() != n)
    throw InputError("form_constrained_solutions: dimension mismatch");
  const RealMatrix a = form_constrained_system(rho0.matrix(), rho1.matrix(), form.j);
  const auto ns = linalg::real_null_space(a, null_cutoff(linalg::spectral_norm(a), tol));
  LinearSolutions out;
  out.nullspace_dim = ns.dim;
  out.smallest_singular_value = ns.smallest_singular_value();
  for (Eigen::Index k = 0; k < ns.dim; ++k) out.basis.push_back(linalg::from_real(ns.basis.col(k), n));
  return out;
}

bool verify_witness(const ComplexMatrix& u, const DensityMatrix& rho0, const DensityMatrix& rho1,
                    const std::optional<InvariantForm>& form, const Tolerances& tol) {
  const Eigen::Index n = rho0.dim();
  if (u.rows() != n || u.cols() != n || rho1.dim() != n) return false;
  if ((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() > tol.verdict) return false;
  if ((u * rho0.matrix() * u.adjoint() - rho1.matrix()).norm() > tol.verdict) return false;
  if (form) {
    if (form->dim() != n) return false;
    if ((u.transpose() * form->j * u - form->j).norm() > tol.verdict) return false;
    if (form->symmetry == FormSymmetry::Symmetric && std::abs(u.determinant() - 1.0) > tol.verdict)
      return false;
  }
  return true;
}

std::optional<ComplexMatrix> witness_search(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                            const std::optional<InvariantForm>& form,
                                            const ReachabilityOptions& options) {
  const Tolerances& tol = options.tol;
  const Eigen::Index n = rho0.dim();
  if (rho1.dim() != n) throw InputError("witness_search: dimension mismatch");
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  if (verify_witness(id, rho0, rho1, form, tol)) return id;

  std::vector<ComplexMatrix> basis;
  bool complex_span = false;
  if (form) {
    basis = form_constrained_solutions(rho0, rho1, *form, tol).basis;
  } else {
    const ComplexMatrix a = conjugation_system(rho0.matrix(), rho1.matrix());
    const auto ns = linalg::complex_null_space(a, null_cutoff(linalg::spectral_norm(a), tol));
    for (Eigen::Index k = 0; k < ns.dim; ++k) basis.push_back(linalg::unvec(ns.basis.col(k), n));
    complex_span = true;
  }
  if (basis.empty()) return std::nullopt;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const bool odd_orthogonal =
      form && form->symmetry == FormSymmetry::Symmetric && n % 2 == 1;
  for (std::size_t attempt = 0; attempt < options.budget; ++attempt) {
    ComplexMatrix u = ComplexMatrix::Zero(n, n);
    for (const auto& b : basis) {
      const Complex c = complex_span ? Complex(gauss(rng), gauss(rng)) : Complex(gauss(rng), 0.0);
      u += c * b;
    }
    ComplexMatrix w = linalg::nearest_unitary(u);
    // O(N) \ SO(N) is -SO(N) in odd dimension
    if (odd_orthogonal && w.determinant().real() < 0.0) w = -w;
    if (verify_witness(w, rho0, rho1, form, tol)) return w;
  }
  return std::nullopt;
}

ComplexMatrix eigenbasis_witness(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> e0(rho0.matrix());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> e1(rho1.matrix());
  ComplexMatrix v1 = e1.eigenvectors();
  const ComplexMatrix v0 = e0.eigenvectors();
  const Complex det = (v1 * v0.adjoint()).determinant();
  v1.col(0) *= std::conj(det) / std::abs(det);
  return v1 * v0.adjoint();
}

ReachabilityVerdict decide_reachability(const GroupClass& group,
                                        const std::optional<InvariantForm>& form,
                                        const DensityMatrix& rho0, const DensityMatrix& rho1,
                                        const ReachabilityOptions& options) {
  if (rho0.dim() != rho1.dim()) throw InputError("decide_reachability: dimension mismatch");
  if (form && form->dim() != rho0.dim()) throw InputError("decide_reachability: form dimension mismatch");
  if (!lexicographically_less(rho1.matrix(), rho0.matrix()))
    return decide_oriented(group, form, rho0, rho1, options);

  // evaluate as (rho1, rho0) so both orientations run the same computation
  ReachabilityVerdict v = decide_oriented(group, form, rho1, rho0, options);
  if (v.witness) *v.witness = v.witness->adjoint().eval();
  if (v.certificate) std::swap(v.certificate->lhs, v.certificate->rhs);
  return v;
}

double recheck_certificate(const NonEquivalenceCertificate& cert, const DensityMatrix& rho0,
                           const DensityMatrix& rho1, const std::optional<InvariantForm>& form,
                           const ReachabilityOptions& options) {
  const Tolerances& tol = options.tol;
  auto need_form = [&]() -> const InvariantForm& {
    if (!form) throw InputError("recheck_certificate: certificate requires an invariant form");
    return *form;
  };
  switch (cert.kind) {
    case CertificateKind::SpectrumMismatch: {
      const RealVector a = sorted_eigenvalues(rho0.matrix());
      const RealVector b = sorted_eigenvalues(rho1.matrix());
      return (a - b).cwiseAbs().maxCoeff();
    }
    case CertificateKind::TildeSpectrumMismatch: {
      const RealVector a = sorted_eigenvalues(tilde_transform(rho0, need_form(), tol).matrix());
      const RealVector b = sorted_eigenvalues(tilde_transform(rho1, need_form(), tol).matrix());
      return (a - b).cwiseAbs().maxCoeff();
    }
    case CertificateKind::WordTraceMismatch: {
      if (cert.word.empty()) throw InputError("recheck_certificate: empty word");
      const ComplexMatrix t0 = tilde_transform(rho0, need_form(), tol).matrix();
      const ComplexMatrix t1 = tilde_transform(rho1, need_form(), tol).matrix();
      return std::abs(word_trace(cert.word, rho0.matrix(), t0) -
                      word_trace(cert.word, rho1.matrix(), t1));
    }
    case CertificateKind::EmptyNullSpace: {
      if (cert.system == LinearSystem::Conjugation)
        return linear_system_test(rho0, rho1, need_form(), tol).smallest_singular_value;
      return form_constrained_solutions(rho0, rho1, need_form(), tol).smallest_singular_value;
    }
  }
  return 0.0;
}

}  // namespace qreach
