#pragma once

#include <iosfwd>

namespace eqcheck::cli {

// Exit-code contract shared by every subcommand.
inline constexpr int kExitCorrect = 0;
inline constexpr int kExitIncorrect = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitExprError = 65;

/// Runs the command-line front end; out/err replace stdout/stderr so the
/// whole tool stays testable in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eqcheck::cli
