#include <doctest.h>

#include "qreach/centralizer.hpp"
#include "qreach/reachability.hpp"
#include "test_support.hpp"

using namespace qreach;
using namespace qtest;

namespace {

const double a = 0.3;
const double b = 0.2;

LieBasis sp2_algebra() { return form_preserving_algebra(standard_symplectic_form(2)); }

// Real dimension of {x in span(basis) : [x, rho] = 0} by full-pivoting LU on the
// coefficient map c -> sum_k c_k [X_k, rho].
std::size_t intersection_oracle(const DensityMatrix& rho, const LieBasis& basis) {
  std::vector<ComplexMatrix> images;
  for (const auto& x : basis.elements()) images.push_back(x * rho.matrix() - rho.matrix() * x);
  const Eigen::Index n = rho.dim();
  RealMatrix m(2 * n * n, static_cast<Eigen::Index>(images.size()));
  for (std::size_t k = 0; k < images.size(); ++k)
    for (Eigen::Index e = 0; e < n * n; ++e) {
      m(e, static_cast<Eigen::Index>(k)) = images[k].data()[e].real();
      m(n * n + e, static_cast<Eigen::Index>(k)) = images[k].data()[e].imag();
    }
  Eigen::FullPivLU<RealMatrix> lu(m);
  lu.setThreshold(1e-9);
  return basis.size() - static_cast<std::size_t>(lu.rank());
}

LieBasis full_u(Eigen::Index n, Rng& rng) { return lie_closure({I1 * rng.hermitian(n), I1 * rng.hermitian(n)}); }

}  // namespace

TEST_SUITE("centralizer") {

TEST_CASE("centralizer dimensions") {
  CHECK(centralizer_dim(density(diag({a, a, b, b}))) == 8);
  CHECK(centralizer_dim(maximally_mixed(5)) == 25);
  CHECK(centralizer_dim(density(diag({0.4, 0.3, 0.2, 0.1}))) == 4);
}

TEST_CASE("intersection dimensions") {
  Rng rng(51);
  const LieBasis sp2 = sp2_algebra();
  CHECK(intersection_dim(density(diag({a, a, b, b})), sp2) == 4);
  CHECK(intersection_dim(maximally_mixed(4), sp2) == sp2.size());
  const LieBasis u4 = full_u(4, rng);
  REQUIRE(u4.size() == 16);
  CHECK(intersection_dim(with_spectrum(rng.distinct_weights(4), rng.unitary(4)), u4) == 4);
  CHECK_THROWS_AS(intersection_dim(maximally_mixed(3), sp2), InputError);
}

TEST_CASE("transitivity reports") {
  const LieBasis sp2 = sp2_algebra();
  SUBCASE("diag(a,a,b,b)") {
    const TransitivityReport r = transitive_by_dimension(density(diag({a, a, b, b})), sp2);
    CHECK(r.dim_un == 16);
    CHECK(r.dim_s == 10);
    CHECK(r.dim_centralizer == 8);
    CHECK(r.dim_intersection == 4);
    CHECK_FALSE(r.transitive);
  }
  SUBCASE("maximally mixed") {
    const TransitivityReport r = transitive_by_dimension(maximally_mixed(4), sp2);
    CHECK(r.dim_centralizer == 16);
    CHECK(r.dim_intersection == 10);
    CHECK(r.transitive);
  }
  SUBCASE("pure state") {
    const TransitivityReport r = transitive_by_dimension(density(diag({1, 0, 0, 0})), sp2);
    CHECK(r.dim_un - r.dim_s == 6);
    CHECK(r.dim_centralizer - r.dim_intersection == 6);
    CHECK(r.transitive);
  }
}

TEST_CASE("property: dimensions agree with the LU oracle and are conjugation invariant") {
  Rng rng(52);
  const LieBasis sp2 = sp2_algebra();
  const LieBasis so4 = form_preserving_algebra(standard_orthogonal_form(4));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> w;
    switch (trial % 4) {
      case 0: w = rng.distinct_weights(4); break;
      case 1: w = pure_like_weights(rng, 4); break;
      case 2: w = {0.15, 0.15, 0.35, 0.35}; break;
      default: w = {0.1, 0.1, 0.1, 0.7}; break;
    }
    const auto rho = with_spectrum(w, rng.unitary(4));
    const ComplexMatrix u = rng.unitary(4);
    const auto moved = density(u * rho.matrix() * u.adjoint());
    CHECK(centralizer_dim(rho) == centralizer_dim(moved));
    for (const LieBasis* basis : {&sp2, &so4}) {
      const std::size_t inter = intersection_dim(rho, *basis);
      CHECK(inter == intersection_oracle(rho, *basis));
      CHECK(inter <= std::min(centralizer_dim(rho), basis->size()));
    }
  }
}

TEST_CASE("property: dimension route agrees with the transitivity table") {
  Rng rng(53);
  for (Eigen::Index l = 1; l <= 3; ++l) {
    const Eigen::Index n = 2 * l;
    const LieBasis sp = form_preserving_algebra(standard_symplectic_form(l));
    const LieBasis so = form_preserving_algebra(standard_orthogonal_form(n));
    const LieBasis su = lie_closure({I1 * rng.traceless_hermitian(n), I1 * rng.traceless_hermitian(n)});
    const std::vector<std::pair<GroupClass, const LieBasis*>> groups{
        {group_of(GroupKind::Symplectic, l), &sp},
        {group_of(GroupKind::SpecialOrthogonal, n), &so},
        {group_of(GroupKind::SpecialUnitary, n), &su},
    };
    for (const auto& [group, basis] : groups) {
      for (int kind = 0; kind < 3; ++kind) {
        std::vector<double> w;
        if (kind == 0) w.assign(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
        if (kind == 1) w = pure_like_weights(rng, n);
        if (kind == 2) w = rng.distinct_weights(n);
        const auto rho = with_spectrum(w, rng.unitary(n));
        const StateClass cls = classify_state(rho);
        CAPTURE(group_name(group));
        CAPTURE(state_kind_name(cls.kind));
        CHECK(transitive_by_dimension(rho, *basis).transitive == transitive_on_class(group, cls.kind));
      }
    }
  }
}

}  // TEST_SUITE
