#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace foon::cli {

enum ExitCode : int { kSuccess = 0, kParseError = 1, kRetrievalError = 2 };

/// Runs `foon <validate|retrieve|compare|generate> ...`. `args` excludes the
/// program name. Returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace foon::cli
