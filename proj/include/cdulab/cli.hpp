#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cdulab::cli {

inline constexpr int kExitOk = 0;
/// A closed-form criterion, invariant or prediction disagreed with brute force.
inline constexpr int kExitFalsified = 1;
/// Bad flags, malformed input or a budget violation.
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdulab::cli
