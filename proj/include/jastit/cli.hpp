#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jastit {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;         // success, or the checked property holds
inline constexpr int kExitProperty = 1;   // property fails, or a counter-model was produced
inline constexpr int kExitInput = 2;      // malformed input or flags
inline constexpr int kExitResource = 3;   // an enumeration bound was exceeded

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jastit
