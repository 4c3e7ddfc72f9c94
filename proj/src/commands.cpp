#include "qreach/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qreach/centralizer.hpp"
#include "qreach/group_id.hpp"
#include "qreach/lie_engine.hpp"

namespace qreach {

using nlohmann::json;

namespace {

struct SystemAnalysis {
  LieBasis basis;
  GroupClass group;
};

const ControlSystem& require_system(const AnalysisDocument& doc) {
  if (!doc.system) throw InputError("document has no system; this command needs one");
  return *doc.system;
}

const DensityMatrix& require_state(const AnalysisDocument& doc, const std::string& name) {
  const auto it = doc.states.find(name);
  if (it == doc.states.end()) throw InputError("unknown state \"" + name + "\"");
  return it->second;
}

SystemAnalysis analyze(const AnalysisDocument& doc) {
  const ControlSystem& sys = require_system(doc);
  SystemAnalysis a;
  a.basis = lie_closure(sys.generators(), doc.options.tol);
  a.group = classify_group(a.basis, sys, doc.options.tol);
  return a;
}

std::string format_matrix(const ComplexMatrix& m) {
  // values below print precision are shown as exact zeros, without a sign
  auto clean = [](double x) { return std::abs(x) < 5e-7 ? 0.0 : x; };
  const bool real = m.imag().cwiseAbs().maxCoeff() < 5e-7;
  std::ostringstream out;
  char buf[64];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "  [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      if (real)
        std::snprintf(buf, sizeof buf, "%s% .6f", c ? " " : "", clean(z.real()));
      else
        std::snprintf(buf, sizeof buf, "%s% .6f%+.6fi", c ? " " : "", clean(z.real()), clean(z.imag()));
      out << buf;
    }
    out << " ]\n";
  }
  return out.str();
}

std::string kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::FullUnitary: return "FullUnitary";
    case GroupKind::SpecialUnitary: return "SpecialUnitary";
    case GroupKind::Symplectic: return "Symplectic";
    case GroupKind::SpecialOrthogonal: return "SpecialOrthogonal";
    case GroupKind::Other: return "Other";
  }
  return "Other";
}

std::string symmetry_name(FormSymmetry s) {
  return s == FormSymmetry::Antisymmetric ? "antisymmetric" : "symmetric";
}

json form_json(const InvariantForm& f) {
  return {{"J", matrix_to_json(f.j)}, {"symmetry", symmetry_name(f.symmetry)},
          {"nullspace_dim", f.nullspace_dim}};
}

json group_json(const SystemAnalysis& a) {
  json g = {{"name", group_name(a.group)},
            {"kind", kind_name(a.group.kind)},
            {"degree", a.group.degree},
            {"central_u1", a.group.central_u1},
            {"algebra_dim", a.group.algebra_dim},
            {"diagnostic", a.group.diagnostic}};
  if (a.group.form) {
    g["form"] = form_json(*a.group.form);
    g["textbook_spectrum"] = a.group.textbook_spectrum;
  } else {
    g["form"] = nullptr;
  }
  return g;
}

void expect_args(const std::string& command, const std::vector<std::string>& args, std::size_t n) {
  if (args.size() != n)
    throw InputError(command + ": expected " + std::to_string(n) + " argument(s), got " +
                     std::to_string(args.size()));
}

CommandResult analyze_group(const AnalysisDocument& doc) {
  const SystemAnalysis a = analyze(doc);
  CommandResult res;
  res.report = {{"command", "analyze-group"}, {"dim", doc.dim()}, {"group", group_json(a)}};
  std::ostringstream s;
  s << group_name(a.group) << ", dim L = " << a.basis.size() << "\n";
  if (a.group.kind == GroupKind::Other) s << "note: " << a.group.diagnostic << "\n";
  if (a.group.form) s << "J~ (" << symmetry_name(a.group.form->symmetry) << "):\n" << format_matrix(a.group.form->j);
  res.summary = s.str();
  return res;
}

CommandResult find_j(const AnalysisDocument& doc) {
  const ControlSystem& sys = require_system(doc);
  const FormSearch fs = find_invariant_form(traceless_generators(sys), doc.options.tol);
  CommandResult res;
  const char* status = fs.status == FormStatus::Found           ? "Found"
                       : fs.status == FormStatus::NoForm        ? "NoForm"
                       : fs.status == FormStatus::AmbiguousForm ? "AmbiguousForm"
                                                                : "NotUnitary";
  res.report = {{"command", "find-j"},
                {"status", status},
                {"nullspace_dim", fs.nullspace_dim},
                {"diagnostic", fs.diagnostic},
                {"form", fs.form ? form_json(*fs.form) : json(nullptr)}};
  std::ostringstream s;
  s << status << " (null space dimension " << fs.nullspace_dim << ")\n";
  if (fs.form) s << "J~ (" << symmetry_name(fs.form->symmetry) << "):\n" << format_matrix(fs.form->j);
  res.summary = s.str();
  return res;
}

CommandResult classify(const AnalysisDocument& doc, const std::string& name) {
  const DensityMatrix& rho = require_state(doc, name);
  const Spectrum sp = spectrum(rho, doc.options.tol);
  const StateClass cls = classify_state(rho, doc.options.tol);
  json clusters = json::array();
  for (const auto& c : sp.clusters) clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  CommandResult res;
  res.report = {{"command", "classify-state"}, {"state", name}, {"kind", state_kind_name(cls.kind)},
                {"spectrum", clusters}, {"ambiguous", cls.ambiguous}};
  res.summary = name + ": " + state_kind_name(cls.kind) + "\n";
  if (cls.ambiguous) res.summary += "warning: " + cls.warning + "\n";
  return res;
}

CommandResult kinematic(const AnalysisDocument& doc, const std::string& a, const std::string& b) {
  const bool eq = kinematically_equivalent(require_state(doc, a), require_state(doc, b), doc.options.tol);
  CommandResult res;
  res.report = {{"command", "kinematic"}, {"states", {a, b}}, {"kinematically_equivalent", eq}};
  res.summary = a + " and " + b + (eq ? " are" : " are not") + " kinematically equivalent\n";
  return res;
}

CommandResult reachable(const AnalysisDocument& doc, const std::string& a, const std::string& b) {
  const DensityMatrix& rho0 = require_state(doc, a);
  const DensityMatrix& rho1 = require_state(doc, b);
  const SystemAnalysis an = analyze(doc);
  const ReachabilityVerdict v = decide_reachability(an.group, an.group.form, rho0, rho1, doc.options);

  json cert = nullptr;
  if (v.certificate) {
    const auto& c = *v.certificate;
    cert = {{"kind", certificate_kind_name(c.kind)},
            {"quantity", c.quantity},
            {"lhs", {c.lhs.real(), c.lhs.imag()}},
            {"rhs", {c.rhs.real(), c.rhs.imag()}},
            {"violation", c.violation()}};
  }
  CommandResult res;
  res.report = {{"command", "reachable"},
                {"states", {a, b}},
                {"group", group_json(an)},
                {"status", verdict_name(v.status)},
                {"witness", v.witness ? matrix_to_json(*v.witness) : json(nullptr)},
                {"certificate", cert},
                {"narrative", v.narrative}};
  std::ostringstream s;
  s << a << " -> " << b << ": " << verdict_name(v.status) << " under " << group_name(an.group) << "\n";
  for (const auto& line : v.narrative) s << "  - " << line << "\n";
  if (v.certificate)
    s << "certificate: " << certificate_kind_name(v.certificate->kind) << " on "
      << v.certificate->quantity << " (violation " << v.certificate->violation() << ")\n";
  if (v.witness) s << "witness U:\n" << format_matrix(*v.witness);
  res.summary = s.str();
  res.exit_code = v.status == Verdict::Inconclusive ? 2 : 0;
  return res;
}

CommandResult transitive(const AnalysisDocument& doc, const std::string& name) {
  const DensityMatrix& rho = require_state(doc, name);
  const SystemAnalysis an = analyze(doc);
  const StateClass cls = classify_state(rho, doc.options.tol);
  const bool by_theorem = transitive_on_class(an.group, cls.kind);
  const TransitivityReport rep = transitive_by_dimension(rho, an.basis, doc.options.tol);
  CommandResult res;
  res.report = {{"command", "transitive"},
                {"state", name},
                {"state_kind", state_kind_name(cls.kind)},
                {"group", group_json(an)},
                {"transitive_on_class", by_theorem},
                {"dimension_report",
                 {{"dim_un", rep.dim_un},
                  {"dim_s", rep.dim_s},
                  {"dim_centralizer", rep.dim_centralizer},
                  {"dim_intersection", rep.dim_intersection},
                  {"transitive", rep.transitive}}},
                {"agree", by_theorem == rep.transitive}};
  std::ostringstream s;
  s << group_name(an.group) << " on " << name << " (" << state_kind_name(cls.kind) << "): "
    << (by_theorem ? "transitive" : "not transitive") << "\n"
    << "  dimension test: " << rep.dim_un << " - " << rep.dim_s << " vs " << rep.dim_centralizer
    << " - " << rep.dim_intersection << " -> " << (rep.transitive ? "transitive" : "not transitive")
    << "\n";
  res.summary = s.str();
  return res;
}

}  // namespace

CommandResult run_command(const std::string& command, const std::vector<std::string>& args,
                          const AnalysisDocument& doc) {
  try {
    if (command == "analyze-group") {
      expect_args(command, args, 0);
      return analyze_group(doc);
    }
    if (command == "find-j") {
      expect_args(command, args, 0);
      return find_j(doc);
    }
    if (command == "classify-state") {
      expect_args(command, args, 1);
      return classify(doc, args[0]);
    }
    if (command == "kinematic") {
      expect_args(command, args, 2);
      return kinematic(doc, args[0], args[1]);
    }
    if (command == "reachable") {
      expect_args(command, args, 2);
      return reachable(doc, args[0], args[1]);
    }
    if (command == "transitive") {
      expect_args(command, args, 1);
      return transitive(doc, args[0]);
    }
    throw InputError("unknown command \"" + command + "\"");
  } catch (const Error& e) {
    CommandResult res;
    res.exit_code = 1;
    res.report = {{"command", command}, {"error", e.what()}};
    res.summary = std::string("error: ") + e.what() + "\n";
    return res;
  }
}

}  // namespace qreach
