#pragma once

#include <iosfwd>

namespace ellip {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitAuditFailure = 2;
inline constexpr int kExitUsage = 64;

/// Entry point of the `ellip` tool: subcommands run, compare, verify, gen.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ellip
