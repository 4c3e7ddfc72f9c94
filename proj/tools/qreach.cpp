// qreach: command-line front end for dynamical Lie group classification and
// state reachability analysis.
//
//   qreach [options] <document.json> <command> [args...]
//
// The JSON report goes to stdout and a human summary to stderr
// (--output text prints only the summary, to stdout).

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qreach/commands.hpp"
#include "qreach/document.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw qreach::InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify the dynamical Lie group of a quantum control system and decide state reachability"};

  std::string path;
  std::string command;
  std::vector<std::string> args;
  std::optional<double> tol_rank;
  std::optional<double> tol_verdict;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::string output = "json";

  app.add_option("document", path, "Input document (JSON), or - for stdin")->required();
  app.add_option("command", command,
                 "analyze-group | find-j | classify-state <name> | kinematic <a> <b> | "
                 "reachable <a> <b> | transitive <name>")
      ->required();
  app.add_option("args", args, "Command arguments (state names)");
  app.add_option("--tolerance-rank", tol_rank, "Span/rank tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tolerance-verdict", tol_verdict, "Witness residual tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed of the witness sampler");
  app.add_option("--budget", budget, "Number of witness samples");
  app.add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  qreach::CommandResult result;
  try {
    qreach::AnalysisDocument doc = qreach::parse_document(read_input(path));
    if (tol_rank) doc.options.tol.rank = *tol_rank;
    if (tol_verdict) doc.options.tol.verdict = *tol_verdict;
    if (seed) doc.options.seed = *seed;
    if (budget) doc.options.budget = *budget;
    result = qreach::run_command(command, args, doc);
  } catch (const qreach::Error& e) {
    result.exit_code = 1;
    result.report = {{"command", command}, {"error", e.what()}};
    result.summary = std::string("error: ") + e.what() + "\n";
  }

  if (output == "text") {
    std::cout << result.summary;
  } else {
    std::cout << result.report.dump(2) << "\n";
    std::cerr << result.summary;
  }
  return result.exit_code;
}
