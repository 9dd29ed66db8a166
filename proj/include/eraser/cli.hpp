#pragma once

#include <iosfwd>

namespace eraser::cli {

/// Exit codes of the `eraser` tool.
enum Exit : int { kOk = 0, kMismatch = 1, kUsage = 2, kAttackFailed = 3 };

/// Entry point of the `eraser` tool; subcommands gen, protocol, attack,
/// verify and bench. Reads ERASER_SEED when --seed is absent.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eraser::cli
