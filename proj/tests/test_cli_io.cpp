#include <doctest.h>

#include <cmath>

#include "qreach/commands.hpp"
#include "qreach/document.hpp"
#include "test_support.hpp"

using namespace qreach;
using namespace qtest;

namespace {

const char* kLadder = R"({
  "system": {
    "H0": [[-2,0,0,0,0],[0,-1,0,0,0],[0,0,0,0,0],[0,0,0,1,0],[0,0,0,0,2]],
    "controls": [[[0,1,0,0,0],[1,0,1,0,0],[0,1,0,1,0],[0,0,1,0,1],[0,0,0,1,0]]]
  },
  "states": {
    "e1": [[1,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0]],
    "e15": [[0.5,0,0,0,0.5],[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0.5,0,0,0,0.5]]
  }
})";

// Sp(2) generated by two elements of sp(2) in the standard basis.
std::string sp2_document() {
  Rng rng(61);
  const auto hs = random_hamiltonians_preserving(standard_symplectic_form(2), rng);
  nlohmann::json doc;
  doc["system"] = {{"H0", matrix_to_json(hs[0])}, {"controls", {matrix_to_json(hs[1])}}};
  doc["states"] = {{"aabb", matrix_to_json(diag({0.15, 0.15, 0.35, 0.35}))},
                   {"abba", matrix_to_json(diag({0.15, 0.35, 0.35, 0.15}))},
                   {"abab", matrix_to_json(diag({0.15, 0.35, 0.15, 0.35}))},
                   {"mixed", matrix_to_json(diag({0.25, 0.25, 0.25, 0.25}))}};
  return doc.dump();
}

CommandResult run(const std::string& text, const std::string& cmd, std::vector<std::string> args = {}) {
  return run_command(cmd, args, parse_document(text));
}

}  // namespace

TEST_SUITE("cli_io") {

TEST_CASE("parse the ladder document") {
  const AnalysisDocument doc = parse_document(kLadder);
  REQUIRE(doc.system);
  CHECK(doc.system->dim() == 5);
  CHECK(doc.system->controls().size() == 1);
  CHECK(doc.states.size() == 2);
  CHECK(doc.dim() == 5);
}

TEST_CASE("states only") {
  const AnalysisDocument doc = parse_document(R"({"states": {"half": [[0.5, 0], [0, 0.5]]}})");
  CHECK_FALSE(doc.system);
  CHECK(doc.dim() == 2);
}

TEST_CASE("complex entries") {
  const AnalysisDocument doc = parse_document(R"({"states": {"r": [[0.5, [0, -0.5]], [[0, 0.5], 0.5]]}})");
  CHECK(doc.states.at("r").matrix()(0, 1) == Complex(0, -0.5));
}

TEST_CASE("validation errors name the matrix") {
  try {
    parse_document(R"({"system": {"H0": [[1, 2], [0, 1]]}})");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("H0") != std::string::npos);
  }
  try {
    parse_document(R"({"states": {"bad": [[0.7, 0], [0, 0.7]]}})");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("bad") != std::string::npos);
    CHECK(std::string(e.what()).find("trace") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_document(R"({"system": {"H0": [[1, 0], [0, 1]]}, "states": {"r": [[1,0,0],[0,0,0],[0,0,0]]}})"),
                  ValidationError);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_document("{\n  \"states\": {\n    \"r\": [[1, 0], [0, 0]],,\n  }\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("structural errors") {
  CHECK_THROWS_AS(parse_document("[]"), ParseError);
  CHECK_THROWS_AS(parse_document(R"({"stats": {}})"), ParseError);
  CHECK_THROWS_AS(parse_document(R"({"states": {"r": [[1, 0]]}})"), ParseError);
  CHECK_THROWS_AS(parse_document(R"({"states": {"r": [[1, 0], [0, "x"]]}})"), ParseError);
  CHECK_THROWS_AS(parse_document(R"({"states": {"r": [[1]], "r": [[1]]}})"), ParseError);
  CHECK_THROWS_AS(parse_document(R"({"options": {"seed": -1}})"), ParseError);
  CHECK_THROWS_AS(parse_document(R"({"options": {"tolerance_rank": 0}})"), ParseError);
}

TEST_CASE("options") {
  const AnalysisDocument doc =
      parse_document(R"({"options": {"seed": 7, "budget": 12, "tolerance_verdict": 1e-6}})");
  CHECK(doc.options.seed == 7);
  CHECK(doc.options.budget == 12);
  CHECK(doc.options.tol.verdict == 1e-6);
  CHECK(doc.options.tol.rank == Tolerances{}.rank);
}

TEST_CASE("round trip") {
  Rng rng(62);
  AnalysisDocument doc;
  doc.system.emplace(rng.hermitian(3), std::vector<ComplexMatrix>{rng.hermitian(3)});
  doc.states.emplace("r", with_spectrum(rng.distinct_weights(3), rng.unitary(3)));
  doc.options.seed = 99;
  const AnalysisDocument back = parse_document(serialize_document(doc));
  REQUIRE(back.system);
  CHECK(back.system->drift() == doc.system->drift());
  CHECK(back.system->controls()[0] == doc.system->controls()[0]);
  CHECK(back.states.at("r").matrix() == doc.states.at("r").matrix());
  CHECK(back.options.seed == 99);
  CHECK(serialize_document(back) == serialize_document(doc));
}

TEST_CASE("analyze-group on the ladder document") {
  const CommandResult r = run(kLadder, "analyze-group");
  CHECK(r.exit_code == 0);
  CHECK(r.summary.rfind("SO(5), dim L = 10", 0) == 0);
  CHECK(r.summary.find("J~") != std::string::npos);
  CHECK(r.report["group"]["name"] == "SO(5)");
  CHECK(r.report["group"]["algebra_dim"] == 10);
  const ComplexMatrix j = matrix_from_json(r.report["group"]["form"]["J"], "J");
  CHECK((j - ladder_form()).norm() < 1e-8);
}

TEST_CASE("reachable on the ladder pure states") {
  const CommandResult r = run(kLadder, "reachable", {"e1", "e15"});
  CHECK(r.exit_code == 0);
  CHECK(r.report["status"] == "NotEquivalent");
  CHECK(r.report["certificate"]["kind"] == "WordTraceMismatch");
}

TEST_CASE("reachable with a witness") {
  const CommandResult r = run(sp2_document(), "reachable", {"aabb", "abba"});
  CHECK(r.exit_code == 0);
  CHECK(r.report["status"] == "Equivalent");
  REQUIRE(r.report["witness"].is_array());
  const ComplexMatrix u = matrix_from_json(r.report["witness"], "witness");
  CHECK((u * diag({0.15, 0.15, 0.35, 0.35}) * u.adjoint() - diag({0.15, 0.35, 0.35, 0.15})).norm() < 1e-7);
  CHECK(r.summary.find("Equivalent") != std::string::npos);
  CHECK(run(sp2_document(), "reachable", {"aabb", "abab"}).report["status"] == "NotEquivalent");
}

TEST_CASE("other commands") {
  const std::string doc = sp2_document();
  CHECK(run(doc, "classify-state", {"mixed"}).summary == "mixed: CompletelyRandom\n");
  CHECK(run(doc, "kinematic", {"aabb", "abab"}).report["kinematically_equivalent"] == true);
  const CommandResult t = run(doc, "transitive", {"aabb"});
  CHECK(t.report["transitive_on_class"] == false);
  CHECK(t.report["agree"] == true);
  CHECK(t.report["dimension_report"]["dim_intersection"] == 4);
  const CommandResult f = run(doc, "find-j");
  CHECK(f.report["status"] == "Found");
  CHECK(f.report["form"]["symmetry"] == "antisymmetric");
}

TEST_CASE("command errors") {
  CHECK(run(kLadder, "reachable", {"e1", "nope"}).exit_code == 1);
  CHECK(run(kLadder, "frobnicate").exit_code == 1);
  CHECK(run(kLadder, "classify-state").exit_code == 1);
  CHECK(run(R"({"states": {"r": [[1, 0], [0, 0]]}})", "analyze-group").exit_code == 1);
}

TEST_CASE("inconclusive verdicts exit with 2") {
  // spin-3/2 rotations: a proper subgroup of Sp(2) with no witness construction
  const Spin s = spin_matrices(3);
  nlohmann::json doc;
  doc["system"] = {{"H0", matrix_to_json(s.z)}, {"controls", {matrix_to_json(s.x)}}};
  doc["states"] = {{"p", matrix_to_json(diag({0.1, 0.2, 0.3, 0.4}))},
                   {"q", matrix_to_json(diag({0.1, 0.2, 0.3, 0.4}))}};
  // q is a rotated copy of p so that the necessary tests pass
  const LieBasis alg = lie_closure({I1 * s.z, I1 * s.x});
  Rng rng(63);
  const ComplexMatrix u = rng.group_element(alg);
  doc["states"]["q"] = matrix_to_json(u * diag({0.1, 0.2, 0.3, 0.4}) * u.adjoint());
  const CommandResult r = run(doc.dump(), "reachable", {"p", "q"});
  CHECK(r.report["status"] == "Inconclusive");
  CHECK(r.exit_code == 2);
}

TEST_CASE("exit codes and reports are deterministic") {
  const std::string doc = sp2_document();
  const CommandResult a = run(doc, "reachable", {"aabb", "abba"});
  const CommandResult b = run(doc, "reachable", {"aabb", "abba"});
  CHECK(a.exit_code == b.exit_code);
  CHECK(a.report == b.report);
}

}  // TEST_SUITE
