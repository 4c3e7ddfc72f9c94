#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "qreach/lie_engine.hpp"
#include "qreach/reachability.hpp"
#include "qreach/state_space.hpp"

namespace qreach {

/// Malformed document text. `line` and `column` are 1-based; zero when the
/// error is structural rather than syntactic.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A control system, a set of named states and analysis options, all of one dimension.
struct AnalysisDocument {
  std::optional<ControlSystem> system;
  std::map<std::string, DensityMatrix> states;
  ReachabilityOptions options;

  Eigen::Index dim() const;
};

/// Parses the JSON document format described in docs/input_format.md.
/// Throws ParseError for syntax and structure problems and ValidationError
/// when a matrix violates its invariants.
AnalysisDocument parse_document(const std::string& text);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json document_to_json(const AnalysisDocument& doc);
std::string serialize_document(const AnalysisDocument& doc);

}  // namespace qreach
