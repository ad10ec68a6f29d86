#pragma once

#include <ostream>

namespace wdistill::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `wdistill` tool. Subcommands: verify, curve, yield,
// threshold, ppt, random.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wdistill::cli
