#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace koszpert {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // a theorem check or oracle comparison failed
inline constexpr int kExitInputError = 2;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace koszpert
