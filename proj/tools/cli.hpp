#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace knotinv::cli {

enum ExitCode : int { kPass = 0, kInputError = 2, kNumericalFailure = 3 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace knotinv::cli
