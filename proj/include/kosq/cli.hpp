#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kosq::cli {

// Exit codes.
inline constexpr int kClean = 0;
inline constexpr int kFindings = 1;
inline constexpr int kInputError = 2;

// Runs `kosq <args...>` writing the report to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kosq::cli
