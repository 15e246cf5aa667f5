#pragma once

#include <optional>
#include <string>
#include <vector>

#include "f1kit/emit.hpp"
#include "f1kit/motive.hpp"

namespace f1kit::cli {

enum class Command { Classes, Points, Series, Strata, Torify, Blueprint, Crossed };

std::string to_string(Command c);

struct CommandConfig {
  Command command = Command::Classes;
  std::string space;  ///< classes/points: mbar0|tdn|open|proj; torify: proj|open|tree
  std::optional<int> d;
  std::optional<int> n;
  std::optional<BigInt> m;
  std::optional<int> g;
  std::optional<int> localize;
  std::optional<std::string> expr;  ///< torify: JSON expression to evaluate
  std::optional<std::string> tree;  ///< torify --space tree: JSON tree shape
  Basis basis = Basis::T;
  int order = 10;
  Format format = Format::Text;
};

enum ExitCode : int { kOk = 0, kUsage = 2, kRange = 3, kInvariant = 4 };

struct RunResult {
  int status = kOk;
  std::string output;
  std::string error;
};

/// Missing or contradictory parameters; reported with kUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds the result document; throws UsageError, std::invalid_argument /
/// std::out_of_range, or InvariantError.
Document build_document(const CommandConfig& config);

/// Dispatches and maps exceptions to exit codes.
RunResult run(const CommandConfig& config);

/// Parses argv-style arguments (without the program name) and runs.
RunResult main_with_args(const std::vector<std::string>& args);

}  // namespace f1kit::cli
