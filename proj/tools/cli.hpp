#pragma once

#include <ostream>

namespace ulik::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `ulik` tool. Machine-readable key=value lines go to
/// `out`; diagnostics and timing go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ulik::cli
