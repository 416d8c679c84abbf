#ifndef FADENET_CONFIG_HPP
#define FADENET_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fadenet/fading.hpp"
#include "fadenet/montecarlo.hpp"
#include "fadenet/threshold.hpp"

namespace fadenet {

/// Schema or validation problem; maps to exit code 2.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Subcommand {
  Simulate,
  OptimizeThreshold,
  SolveThreshold,
  Asymptotics,
  Oracle,
  Sweep,
  VerifyBounds,
};

const char* subcommand_name(Subcommand c);

/// Pre-validation key/value layer shared by the JSON file and the command
/// line; every field optional so that flags can override file values.
struct RawConfig {
  std::optional<std::string> subcommand;
  std::optional<std::vector<std::uint64_t>> n_list;
  std::optional<double> rho;
  std::optional<std::string> fading;  ///< "rayleigh" | "exponential"
  std::optional<double> fading_mean;
  std::optional<std::vector<double>> table_x;
  std::optional<std::vector<double>> table_cdf;
  std::optional<std::string> threshold_mode;
  std::optional<double> delta;
  std::optional<std::string> xi;   ///< "default" or a number
  std::optional<std::string> psi;
  std::optional<std::string> phi;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;  ///< "dense" | "virtual"
  std::optional<std::string> output;
  std::optional<unsigned> threads;
  std::optional<bool> bits;
  std::optional<std::uint32_t> oracle_grid;
};

/// Parses a UTF-8 JSON config file; unknown keys are rejected with the
/// offending key named.
RawConfig load_config_file(const std::string& path);

/// Later layers win field by field (defaults < file < flags).
RawConfig merge_config(RawConfig base, const RawConfig& override_layer);

/// Fully resolved run description. `echo` is the canonical JSON form of
/// the resolved configuration that every report embeds for provenance.
struct RunConfig {
  Subcommand command = Subcommand::Simulate;
  std::vector<std::uint64_t> n_list;
  double rho = 1.0;
  FadingSpec fading = FadingSpec::rayleigh();
  ThresholdMode threshold_mode = ThresholdMode::Optimize;
  double fixed_delta = 0.0;
  SlackRule xi_rule = slack::sqrt_log_log();
  SlackRule psi_rule = slack::log_n();
  SlackRule phi_rule = slack::log_log();
  std::uint64_t trials = 100;
  std::uint64_t samples = 100000;  ///< sample count for distribution-law checks
  std::uint64_t seed = 1;
  TrialMode mode = TrialMode::Virtual;
  std::string output;  ///< empty = stdout; relative paths honor FADENET_OUT_DIR
  unsigned threads = 1;
  bool bits = false;
  std::uint32_t oracle_grid = 64;
  std::string echo;

  std::uint64_t single_n() const;  ///< throws unless exactly one n
  ThresholdPolicy policy(double delta) const;
};

/// Validates and applies defaults; throws ConfigError with a field-level
/// message on any violation.
RunConfig resolve_config(const RawConfig& raw);

}  // namespace fadenet

#endif
