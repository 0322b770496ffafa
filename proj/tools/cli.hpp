#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace voi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;

// Runs the command line `args` (args[0] is the program name). Output files
// named by flags are written directly; everything else goes to out/err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace voi::cli
