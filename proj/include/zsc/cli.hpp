#pragma once

#include <iosfwd>

namespace zsc {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitWitness = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitInternal = 70;

/// Runs the command line. JSON goes to `out`, summaries and diagnostics to
/// `err`; `in` is read when no --input file is given.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace zsc
