#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lep::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kNumeric = 3;
inline constexpr int kVerification = 4;

/// Runs the `lep` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lep::cli
