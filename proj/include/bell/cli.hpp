#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bell::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // invalid, infeasible, signalling, failed assertion
inline constexpr int kExitError = 2;     // usage, I/O or parse error

// Runs one bellkit invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bell::cli
