#pragma once

#include <iosfwd>

namespace cqt {

/// Exit codes: 0 ok, 1 verification failure, 2 input validation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitValidation = 2;

/// Subcommands eval, sweep, boundary and verify.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cqt
