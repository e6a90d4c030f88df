#ifndef VNPDA_TOOLS_CLI_HPP
#define VNPDA_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace vnpda::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInternal = 2;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vnpda::cli

#endif  // VNPDA_TOOLS_CLI_HPP
