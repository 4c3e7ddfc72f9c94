#include "qreach/document.hpp"

#include <set>
#include <vector>

namespace qreach {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  // nlohmann reports the 1-based position of the offending character
  const std::size_t stop = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t k = 0; k < stop; ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Complex entry_from_json(const json& e, const std::string& path) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw ParseError(path + ": entry must be a number or a [re, im] pair");
}

double number_option(const json& opts, const char* key, double fallback) {
  if (!opts.contains(key)) return fallback;
  if (!opts[key].is_number()) throw ParseError(std::string("options.") + key + ": expected a number");
  const double v = opts[key].get<double>();
  if (!(v > 0.0)) throw ParseError(std::string("options.") + key + ": must be positive");
  return v;
}

template <typename Int>
Int integer_option(const json& opts, const char* key, Int fallback) {
  if (!opts.contains(key)) return fallback;
  if (!opts[key].is_number_unsigned())
    throw ParseError(std::string("options.") + key + ": expected a non-negative integer");
  return opts[key].get<Int>();
}

ReachabilityOptions options_from_json(const json& opts) {
  if (!opts.is_object()) throw ParseError("options: expected an object");
  ReachabilityOptions o;
  Tolerances& t = o.tol;
  t.herm = number_option(opts, "tolerance_herm", t.herm);
  t.orth = number_option(opts, "tolerance_orth", t.orth);
  t.rank = number_option(opts, "tolerance_rank", t.rank);
  t.nullspace = number_option(opts, "tolerance_nullspace", t.nullspace);
  t.unit = number_option(opts, "tolerance_unit", t.unit);
  t.cluster = number_option(opts, "tolerance_cluster", t.cluster);
  t.trace = number_option(opts, "tolerance_trace", t.trace);
  t.psd = number_option(opts, "tolerance_psd", t.psd);
  t.verdict = number_option(opts, "tolerance_verdict", t.verdict);
  o.seed = integer_option<std::uint64_t>(opts, "seed", o.seed);
  o.budget = integer_option<std::size_t>(opts, "budget", o.budget);
  o.word_length = integer_option<int>(opts, "word_length", o.word_length);
  return o;
}

json options_to_json(const ReachabilityOptions& o) {
  const Tolerances& t = o.tol;
  return json{{"tolerance_herm", t.herm},       {"tolerance_orth", t.orth},
              {"tolerance_rank", t.rank},       {"tolerance_nullspace", t.nullspace},
              {"tolerance_unit", t.unit},       {"tolerance_cluster", t.cluster},
              {"tolerance_trace", t.trace},     {"tolerance_psd", t.psd},
              {"tolerance_verdict", t.verdict}, {"seed", o.seed},
              {"budget", o.budget},             {"word_length", o.word_length}};
}

}  // namespace

Eigen::Index AnalysisDocument::dim() const {
  if (system) return system->dim();
  if (!states.empty()) return states.begin()->second.dim();
  return 0;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  ComplexMatrix m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rpath = path + "[" + std::to_string(r) + "]";
    if (!row.is_array()) throw ParseError(rpath + ": expected an array");
    if (static_cast<Eigen::Index>(row.size()) != rows)
      throw ParseError(rpath + ": row length " + std::to_string(row.size()) +
                       " does not match the " + std::to_string(rows) + " rows (matrix must be square)");
    for (Eigen::Index c = 0; c < rows; ++c)
      m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)],
                                rpath + "[" + std::to_string(c) + "]");
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

AnalysisDocument parse_document(const std::string& text) {
  // reject duplicate keys, which nlohmann would otherwise resolve silently
  std::vector<std::set<std::string>> seen;
  std::string duplicate;
  json::parser_callback_t cb = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start: seen.emplace_back(); break;
      case json::parse_event_t::object_end: seen.pop_back(); break;
      case json::parse_event_t::key: {
        const auto key = parsed.get<std::string>();
        if (!seen.empty() && !seen.back().insert(key).second && duplicate.empty()) duplicate = key;
        break;
      }
      default: break;
    }
    return true;
  };

  json root;
  try {
    root = json::parse(text, cb);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what(),
                     line, col);
  }
  if (!duplicate.empty()) throw ParseError("duplicate key \"" + duplicate + "\"");
  if (!root.is_object()) throw ParseError("document root must be an object");
  for (const auto& [key, _] : root.items())
    if (key != "system" && key != "states" && key != "options")
      throw ParseError("unknown top-level key \"" + key + "\"");

  AnalysisDocument doc;
  if (root.contains("options")) doc.options = options_from_json(root["options"]);
  const Tolerances& tol = doc.options.tol;

  if (root.contains("system")) {
    const json& sys = root["system"];
    if (!sys.is_object() || !sys.contains("H0"))
      throw ParseError("system: expected an object with key \"H0\"");
    for (const auto& [key, _] : sys.items())
      if (key != "H0" && key != "controls") throw ParseError("system: unknown key \"" + key + "\"");
    ComplexMatrix h0 = matrix_from_json(sys["H0"], "system.H0");
    std::vector<ComplexMatrix> controls;
    if (sys.contains("controls")) {
      if (!sys["controls"].is_array()) throw ParseError("system.controls: expected an array");
      for (std::size_t m = 0; m < sys["controls"].size(); ++m)
        controls.push_back(matrix_from_json(sys["controls"][m],
                                            "system.controls[" + std::to_string(m) + "]"));
    }
    try {
      doc.system.emplace(std::move(h0), std::move(controls), tol);
    } catch (const InputError& e) {
      throw ValidationError(std::string("system: ") + e.what());
    }
  }

  if (root.contains("states")) {
    const json& states = root["states"];
    if (!states.is_object()) throw ParseError("states: expected an object of named matrices");
    for (const auto& [name, value] : states.items()) {
      if (name.empty()) throw ParseError("states: empty state name");
      doc.states.emplace(name, DensityMatrix(matrix_from_json(value, "states." + name), tol, name));
    }
  }

  const Eigen::Index n = doc.dim();
  for (const auto& [name, rho] : doc.states)
    if (rho.dim() != n)
      throw ValidationError(name + ": dimension " + std::to_string(rho.dim()) +
                            " differs from the document dimension " + std::to_string(n));
  return doc;
}

json document_to_json(const AnalysisDocument& doc) {
  json root = json::object();
  if (doc.system) {
    json controls = json::array();
    for (const auto& h : doc.system->controls()) controls.push_back(matrix_to_json(h));
    root["system"] = {{"H0", matrix_to_json(doc.system->drift())}, {"controls", controls}};
  }
  json states = json::object();
  for (const auto& [name, rho] : doc.states) states[name] = matrix_to_json(rho.matrix());
  root["states"] = states;
  root["options"] = options_to_json(doc.options);
  return root;
}

std::string serialize_document(const AnalysisDocument& doc) {
  return document_to_json(doc).dump(2);
}

}  // namespace qreach
