#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amm_lab::cli {

enum ExitCode : int {
    kSuccess = 0,
    kRuntimeError = 1,
    kValidationError = 2,
    kNoArbitrage = 3,
};

/// Entry point of the `amm-lab` tool. `args` excludes the program name.
/// Results go to `--out` when given, otherwise to `out`; diagnostics go to
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amm_lab::cli
