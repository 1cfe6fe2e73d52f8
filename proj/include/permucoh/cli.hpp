#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permucoh {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::size_t kDefaultMaxN = 8;

// args excludes the program name. `in` feeds the parse subcommand.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace permucoh
