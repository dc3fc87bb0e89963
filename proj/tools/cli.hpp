#pragma once

// Command-line front end. Subcommands: interval, coverage, simulate, compare.

#include <iosfwd>
#include <string>
#include <vector>

namespace binci::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitIo = 4;

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "BINCI_OUTPUT_DIR";

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace binci::cli
