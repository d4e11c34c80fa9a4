#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace sdpfeas::cli {

// Total exit-code contract of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kUsageOrIo = 1,
  kAssumptionViolation = 2,
  kOutOfRegime = 3,
  kVerificationFailed = 4,
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Looks variables up in the process environment.
std::optional<std::string> process_env(const std::string& name);

// Runs one invocation. `args` excludes the program name. Reports go to `out`
// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_env);

}  // namespace sdpfeas::cli
