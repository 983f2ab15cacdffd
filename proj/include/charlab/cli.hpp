#pragma once

/// @file cli.hpp
/// @brief Entry point of the charlab command-line tool.

#include <iosfwd>
#include <string>
#include <vector>

namespace charlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitCapViolation = 2;

/// args[0] is the program name. Records go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charlab::cli
