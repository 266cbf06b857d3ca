#pragma once

#include <iosfwd>

namespace lorenz::cli {

struct RunConfig;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the `lorenz` tool, streams injected for testing.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs a parsed scenario and writes the flagged tables into cfg.output_dir.
/// Library errors propagate.
void run_scenario(const RunConfig& cfg);

}  // namespace lorenz::cli
