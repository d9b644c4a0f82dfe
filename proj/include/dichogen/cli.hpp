#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dichogen/genkernel.hpp"

namespace dichogen::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kSpecError = 2,
  kRuntimeError = 3,
  kBatteryTooShort = 4,
};

/// Runs one command line. Normal output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Digits glued together when every value is in 0..9 and sep is empty,
/// otherwise joined with sep (a single space when sep is empty).
std::string format_word(const Word& values, const std::string& sep = "");

}  // namespace dichogen::cli
