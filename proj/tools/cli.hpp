#pragma once

#include <ostream>
#include <string>
#include <vector>

// Command-line front end. Subcommands:
//
//   sample-entropy  moments  fit-dist  subsystem  dynamics  maxent  levy
//   reproduce-all
//
// Exit status: 0 on success, 2 for invalid flags or unusable inputs, 1 when
// a numeric check fails (a Levy tail above its bound, a failed acceptance
// criterion) or a computation throws.

namespace gwvn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name. Summaries go to `out`, diagnostics to
/// `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace gwvn::cli
