#ifndef FADENET_RUNNER_HPP
#define FADENET_RUNNER_HPP

#include <ostream>
#include <string>

#include "fadenet/config.hpp"

namespace fadenet {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 success, 1 runtime error, 2 config error, 3 verification
/// failure. run_command reports 0 or 3 and throws on runtime problems;
/// callers map exceptions to 1 (or 2 for ConfigError).
int run_command(const RunConfig& config, std::ostream& out);

/// Runs with the output target resolved from config.output: stdout when
/// empty, otherwise a file (relative paths are placed under
/// $FADENET_OUT_DIR when that is set).
int run_cli(const RunConfig& config);

std::string resolve_output_path(const std::string& output);

}  // namespace fadenet

#endif
