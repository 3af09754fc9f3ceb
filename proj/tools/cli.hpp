#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "adsforms/theorems.hpp"

namespace adsforms::cli {

/// Invalid flag values or config contents.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Invocation {
  SuiteConfig config;
  /// Set for the `check` subcommand.
  std::optional<std::string> check_input;
  /// --help was requested; `help` holds the text.
  bool help_only = false;
  std::string help;
};

/// Defaults, then the --config file, then explicit flags. Throws UsageError.
Invocation parse_config(int argc, const char* const* argv);

void validate(const SuiteConfig& config);

/// Runs the selected suites, prints a summary to `out` and writes the report if configured.
/// Returns 0 iff every non-informational report passes.
int run(const SuiteConfig& config, std::ostream& out);

/// Evaluates the identities for one form described by a JSON case file; prints the report JSON.
int run_check(const std::string& path, const Tolerance& tol, std::ostream& out);

/// Whole program: exit 2 on usage errors, 3 on I/O or evaluation errors.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adsforms::cli
