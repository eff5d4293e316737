#pragma once

#include <string>
#include <vector>

namespace agc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitBadConfig = 3;
inline constexpr int kExitTooLarge = 4;

/// Entry point for the `agc` tool. Subcommands: coarsen, coarsen-hetero,
/// metrics, validate-theory, bench.
int run(int argc, char** argv);

/// Same as above with argv[0] omitted.
int run(const std::vector<std::string>& args);

}  // namespace agc::cli
