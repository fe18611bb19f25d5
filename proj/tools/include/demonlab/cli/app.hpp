#pragma once

#include <ostream>

namespace demonlab::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConvergence = 3;

// Entry point of the demonlab binary. Human summaries go to `out`, the
// single-line error record to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace demonlab::cli
