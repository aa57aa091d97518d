#pragma once

// Command-line front end: classify, generate, multi, oracle, plot.

#include <ostream>
#include <string>
#include <vector>

namespace intdist {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace intdist
