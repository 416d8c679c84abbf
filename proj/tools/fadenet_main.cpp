// Command-line front end: subcommand dispatch over the core library with a
// JSON config file layer underneath the flags (flags win field by field).
//
// Exit codes: 0 success, 1 runtime error, 2 config/usage error,
// 3 verification-suite failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fadenet/config.hpp"
#include "fadenet/runner.hpp"

namespace {

struct FlagLayer {
  std::string config_path;
  std::vector<std::uint64_t> n;
  std::optional<double> rho;
  std::optional<std::string> fading;
  std::optional<double> fading_mean;
  std::optional<std::string> threshold_mode;
  std::optional<double> delta;
  std::optional<std::string> xi, psi, phi;
  std::optional<std::uint64_t> trials, samples, seed;
  std::optional<std::string> mode;
  std::optional<std::string> output;
  std::optional<unsigned> threads;
  std::optional<std::uint32_t> oracle_grid;
};

void add_common_options(CLI::App* sub, FlagLayer* flags) {
  sub->add_option("--config", flags->config_path, "JSON config file");
  sub->add_option("--n", flags->n,
                  "link count; repeat or comma-separate for sweep and "
                  "asymptotics")
      ->delimiter(',');
  sub->add_option("--rho", flags->rho, "transmit SNR (default: 1)");
  sub->add_option("--fading", flags->fading,
                  "rayleigh | exponential (default: rayleigh; table fading "
                  "only via --config)");
  sub->add_option("--fading-mean", flags->fading_mean,
                  "mean gain for exponential fading (default: 1)");
  sub->add_option("--threshold-mode", flags->threshold_mode,
                  "fixed | optimize | zero-order | asymptotic "
                  "(default: optimize, or fixed when --delta is given)");
  sub->add_option("--delta", flags->delta,
                  "fixed activation threshold (implies fixed mode)");
  sub->add_option("--xi", flags->xi,
                  "active-count slack: default | number "
                  "(default rule: sqrt(log log n))");
  sub->add_option("--psi", flags->psi,
                  "interference slack: default | number "
                  "(default rule: log n)");
  sub->add_option("--phi", flags->phi,
                  "max-gain slack: default | number (default rule: log log n)");
  sub->add_option("--trials", flags->trials,
                  "Monte Carlo trials (default: 100)");
  sub->add_option("--samples", flags->samples,
                  "sample count for distribution-law checks (default: 100000)");
  sub->add_option("--seed", flags->seed, "master seed (default: 1)");
  sub->add_option("--mode", flags->mode,
                  "dense | virtual trial sampling (default: virtual)");
  sub->add_option("--output,-o", flags->output,
                  "output file (default: stdout; relative paths use "
                  "$FADENET_OUT_DIR)");
  sub->add_option("--threads", flags->threads,
                  "worker cap, never changes results (default: 1)");
  sub->add_flag("--bits", "report rates in bits instead of nats");
  sub->add_option("--oracle-grid", flags->oracle_grid,
                  "threshold grid points for the oracle gap (default: 64)");
}

fadenet::RawConfig to_raw(const CLI::App* sub, const FlagLayer& flags) {
  fadenet::RawConfig raw;
  raw.subcommand = sub->get_name();
  if (sub->count("--n") > 0) raw.n_list = flags.n;
  raw.rho = flags.rho;
  raw.fading = flags.fading;
  raw.fading_mean = flags.fading_mean;
  raw.threshold_mode = flags.threshold_mode;
  raw.delta = flags.delta;
  raw.xi = flags.xi;
  raw.psi = flags.psi;
  raw.phi = flags.phi;
  raw.trials = flags.trials;
  raw.samples = flags.samples;
  raw.seed = flags.seed;
  raw.mode = flags.mode;
  raw.output = flags.output;
  raw.threads = flags.threads;
  if (sub->count("--bits") > 0) raw.bits = true;
  raw.oracle_grid = flags.oracle_grid;
  return raw;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fadenet: on-off link activation simulator and analysis "
               "toolkit for fading networks"};
  app.require_subcommand(0, 1);

  FlagLayer flags;
  app.add_option("--config", flags.config_path,
                 "JSON config file (may name the subcommand)");

  const struct {
    const char* name;
    const char* help;
  } kSubcommands[] = {
      {"simulate", "run seeded activation trials, one CSV row per trial"},
      {"optimize-threshold", "maximize the achievable-throughput bound"},
      {"solve-threshold", "zero-order optimal threshold by bisection"},
      {"asymptotics", "leading-order Rayleigh optimum values over n"},
      {"oracle", "exhaustive throughput maximum (n <= 20) and threshold gap"},
      {"sweep", "per-n aggregates and scaling ratios, CSV"},
      {"verify-bounds", "statistical checks of the tail and concentration "
                        "laws; exit 3 on failure"},
  };
  for (const auto& s : kSubcommands)
    add_common_options(app.add_subcommand(s.name, s.help), &flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    fadenet::RawConfig merged;
    const auto subs = app.get_subcommands();
    if (!subs.empty() && subs.front()->count("--config") > 0)
      merged = fadenet::load_config_file(flags.config_path);
    else if (app.count("--config") > 0)
      merged = fadenet::load_config_file(flags.config_path);
    if (!subs.empty())
      merged = fadenet::merge_config(merged, to_raw(subs.front(), flags));
    const fadenet::RunConfig config = fadenet::resolve_config(merged);
    return fadenet::run_cli(config);
  } catch (const fadenet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
