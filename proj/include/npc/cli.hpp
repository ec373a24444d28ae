#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace npc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;

// Runs one command (`codegen`, `verify` or `simulate`); `args` excludes the
// program name. Returns 0 on success, 1 when verify finds an unrecoverable
// pattern, 2 on usage, parse or bound errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace npc::cli
