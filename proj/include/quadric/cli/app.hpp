#pragma once

#include <string>
#include <vector>

namespace quadric::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kUsage = 2, kParse = 3, kDomain = 4 };

struct RunResult {
  int exit_code = kOk;
  std::string out;  ///< report, CSV or help text
  std::string err;  ///< one diagnostic line on failure, empty otherwise
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"classify", "x^2+y^2-z^2=1", "--format", "json"}.
///
/// Failures produce a single line on `err` of the form
///   error: <usage|parse|domain>: <Code>: <message>
/// with exit code 2, 3 or 4 respectively.
RunResult run(const std::vector<std::string>& args);

}  // namespace quadric::cli
