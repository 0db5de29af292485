#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace yeastloc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // validation failure or model/domain error
inline constexpr int kExitIo = 2;      // I/O, parse, usage, or config error

// Runs one command line (args excludes the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace yeastloc::cli
