#include "fadenet/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <vector>

#include "fadenet/bounds.hpp"
#include "fadenet/oracle.hpp"
#include "fadenet/stats.hpp"

namespace fadenet {

namespace {

constexpr double kNatsPerBit = 0.6931471805599453;  // log(2)

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(std::uint64_t x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(x));
  return buf;
}

void write_header(std::ostream& out, const RunConfig& config) {
  out << "# fadenet v" << kVersion << ' ' << subcommand_name(config.command)
      << '\n';
  out << "# config = " << config.echo << '\n';
}

double rate_factor(const RunConfig& config) {
  return config.bits ? 1.0 / kNatsPerBit : 1.0;
}

int run_simulate(const RunConfig& config, std::ostream& out) {
  const std::uint64_t n = config.single_n();
  ThresholdPolicy policy = config.policy(0.0);
  policy.delta = resolve_threshold(config.threshold_mode,
                                   static_cast<double>(n), policy,
                                   config.fixed_delta);
  const NetworkParams params{n, config.rho};
  const auto records =
      run_trials(params, policy, config.mode, SeedSpec{config.seed, 0},
                 config.trials, config.threads);

  const double f = rate_factor(config);
  write_header(out, config);
  out << "n,seed,stream,delta,k_active,throughput_nats,rate_per_link_nats,"
         "bound_Ta,bound_satisfied\n";
  for (const TrialRecord& r : records) {
    out << fmt(r.n) << ',' << fmt(r.seed) << ',' << fmt(r.stream) << ','
        << fmt(r.delta) << ',' << fmt(r.active_count) << ','
        << fmt(r.throughput * f) << ',' << fmt(r.rate_per_link * f) << ','
        << fmt(r.bound * f) << ',' << (r.bound_satisfied ? '1' : '0') << '\n';
  }
  return 0;
}

int run_optimize(const RunConfig& config, std::ostream& out) {
  const double n = static_cast<double>(config.single_n());
  const ThresholdSolution sol =
      optimize_threshold(n, config.policy(0.0));
  const double f = rate_factor(config);
  write_header(out, config);
  out << "delta_star = " << fmt(sol.delta) << '\n';
  out << "Ta_star = " << fmt(sol.throughput * f) << '\n';
  out << "k_predicted = " << fmt(sol.predicted_active) << '\n';
  out << "rbar_predicted = " << fmt(sol.predicted_rate_per_link * f) << '\n';
  out << "method = " << sol.method << '\n';
  return 0;
}

int run_solve(const RunConfig& config, std::ostream& out) {
  const double n = static_cast<double>(config.single_n());
  const double root = solve_zero_order(n);
  const double residual =
      std::abs(2.0 * n * std::exp(-root) - 2.0 * root - root * root);
  write_header(out, config);
  out << "delta = " << fmt(root) << '\n';
  out << "residual = " << fmt(residual) << '\n';
  return 0;
}

int run_asymptotics(const RunConfig& config, std::ostream& out) {
  const double f = rate_factor(config);
  write_header(out, config);
  out << "n,delta,Ta,k,rbar\n";
  for (std::uint64_t n : config.n_list) {
    const RayleighAsymptotics a =
        rayleigh_asymptotics(static_cast<double>(n));
    out << fmt(n) << ',' << fmt(a.delta) << ',' << fmt(a.throughput * f)
        << ',' << fmt(a.active_count) << ',' << fmt(a.rate_per_link * f)
        << '\n';
  }
  return 0;
}

int run_oracle(const RunConfig& config, std::ostream& out) {
  const std::uint64_t n = config.single_n();
  const GainMatrix gains = sample_gain_matrix(
      config.fading, static_cast<std::size_t>(n), SeedSpec{config.seed, 0});
  const NetworkParams params{n, config.rho};
  const OracleResult oracle = max_throughput_exhaustive(gains, params);

  // Threshold grid spanning the direct gains; delta = 0 keeps everyone on.
  const auto diag = gains.diagonal();
  double top = 0.0;
  for (double g : diag) top = std::max(top, g);
  std::vector<double> grid(config.oracle_grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = top * static_cast<double>(i) /
              static_cast<double>(grid.size());
  const GapReport gap = threshold_optimality_gap(gains, params, grid);

  const double f = rate_factor(config);
  write_header(out, config);
  out << "n = " << fmt(n) << '\n';
  out << "T_star = " << fmt(oracle.best_throughput * f) << '\n';
  out << "k_star = " << fmt(static_cast<std::uint64_t>(oracle.best.size()))
      << '\n';
  out << "best_set =";
  for (std::uint32_t i : oracle.best) out << ' ' << i;
  out << '\n';
  out << "subsets_evaluated = " << fmt(oracle.subsets_evaluated) << '\n';
  out << "grid_best_ratio = " << fmt(gap.best_ratio) << '\n';
  out << "grid_best_delta = " << fmt(gap.best_delta) << '\n';
  out << "grid_k_at_best = "
      << fmt(static_cast<std::uint64_t>(gap.threshold_active)) << '\n';
  return 0;
}

int run_sweep(const RunConfig& config, std::ostream& out) {
  SweepConfig sweep;
  sweep.n_list = config.n_list;
  sweep.trials = config.trials;
  sweep.rho = config.rho;
  sweep.threshold_mode = config.threshold_mode;
  sweep.fixed_delta = config.fixed_delta;
  sweep.policy = config.policy(0.0);
  sweep.mode = config.mode;
  sweep.threads = config.threads;
  const ScalingReport report =
      scaling_sweep(sweep, SeedSpec{config.seed, 0});

  const double f = rate_factor(config);
  write_header(out, config);
  out << "n,trials,mean_T,sd_T,mean_k,sd_k,mean_rbar,ratio_T,ratio_k,"
         "ratio_rbar,ci95_T\n";
  for (const SweepRow& r : report.rows) {
    out << fmt(r.n) << ',' << fmt(r.trials) << ',' << fmt(r.mean_throughput * f)
        << ',' << fmt(r.sd_throughput * f) << ',' << fmt(r.mean_active) << ','
        << fmt(r.sd_active) << ',' << fmt(r.mean_rate_per_link * f) << ','
        << fmt(r.ratio_throughput) << ',' << fmt(r.ratio_active) << ','
        << fmt(r.ratio_rate_per_link) << ',' << fmt(r.ci95_throughput * f)
        << '\n';
  }
  return 0;
}

int run_verify_bounds(const RunConfig& config, std::ostream& out) {
  const std::uint64_t n = config.single_n();
  const double nd = static_cast<double>(n);
  write_header(out, config);
  bool all_pass = true;
  const auto line = [&](bool pass, const std::string& text) {
    all_pass = all_pass && pass;
    out << (pass ? "ok   " : "FAIL ") << text << '\n';
  };

  // SINR and rate tail laws for random active sets.
  const std::size_t samples = config.samples;
  const double tail_tolerance =
      std::max(0.01, ks_critical_value(0.01, samples));
  std::uint64_t stream = 0;
  for (std::size_t k : {2, 5, 10}) {
    for (double rho : {1.0, 10.0}) {
      const auto sinr =
          sample_sinr(k, rho, samples, SeedSpec{config.seed, stream++});
      const double dev = ks_statistic(
          sinr, [&](double x) { return 1.0 - sinr_ccdf(x, double(k), rho); });
      line(dev < tail_tolerance,
           "sinr-tail k=" + fmt(std::uint64_t(k)) + " rho=" + fmt(rho) +
               " supdev=" + fmt(dev) + " tol=" + fmt(tail_tolerance));
    }
  }

  // Exponential transform of the rate: Exp(mean 1/(k-1)) regardless of rho.
  {
    const std::size_t k = 10;
    const double rho = 10.0;
    const auto sinr =
        sample_sinr(k, rho, samples, SeedSpec{config.seed, 64});
    std::vector<double> xs;
    xs.reserve(sinr.size());
    for (double g : sinr)
      xs.push_back(xi_transform(std::log1p(g), double(k), rho));
    const double target_mean = 1.0 / (double(k) - 1.0);
    const double ks = ks_statistic(xs, [&](double x) {
      return -std::expm1(-x / target_mean);
    });
    const double crit = ks_critical_value(0.01, xs.size());
    const double mean = moments(xs).mean;
    line(ks < crit, "xi-exponential ks=" + fmt(ks) + " crit=" + fmt(crit));
    line(std::abs(mean - target_mean) <= 0.02 * target_mean,
         "xi-mean mean=" + fmt(mean) + " target=" + fmt(target_mean));
  }

  // Concentration of the active count and of the mean interference.
  {
    ThresholdPolicy policy = config.policy(0.0);
    policy.delta = resolve_threshold(config.threshold_mode, nd, policy,
                                     config.fixed_delta);
    ConcentrationOptions opts;
    opts.xi = config.xi_rule;
    opts.psi = config.psi_rule;
    const auto [interference, count] =
        concentration_check(n, policy.delta, config.trials,
                            SeedSpec{config.seed, 1u << 20}, opts);
    line(interference.pass,
         "interference-mean viol=" + fmt(interference.statistic) +
             " tol=" + fmt(interference.reference));
    line(count.pass, "active-count viol=" + fmt(count.statistic) +
                         " tol=" + fmt(count.reference));
  }

  // Largest direct gain against the exact order-statistic benchmark.
  {
    const double phi = config.phi_rule(nd);
    const TailCheckReport r = max_gain_check(n, config.trials, phi,
                                             SeedSpec{config.seed, 1u << 21});
    line(r.pass, "max-gain freq=" + fmt(r.statistic) +
                     " benchmark=" + fmt(r.reference));
  }

  return all_pass ? 0 : 3;
}

}  // namespace

int run_command(const RunConfig& config, std::ostream& out) {
  switch (config.command) {
    case Subcommand::Simulate: return run_simulate(config, out);
    case Subcommand::OptimizeThreshold: return run_optimize(config, out);
    case Subcommand::SolveThreshold: return run_solve(config, out);
    case Subcommand::Asymptotics: return run_asymptotics(config, out);
    case Subcommand::Oracle: return run_oracle(config, out);
    case Subcommand::Sweep: return run_sweep(config, out);
    case Subcommand::VerifyBounds: return run_verify_bounds(config, out);
  }
  throw std::logic_error("run_command: unknown subcommand");
}

std::string resolve_output_path(const std::string& output) {
  if (output.empty()) return output;
  if (output.front() == '/') return output;
  if (const char* dir = std::getenv("FADENET_OUT_DIR");
      dir != nullptr && dir[0] != '\0') {
    std::string path(dir);
    if (path.back() != '/') path += '/';
    return path + output;
  }
  return output;
}

int run_cli(const RunConfig& config) {
  if (config.output.empty()) return run_command(config, std::cout);
  const std::string path = resolve_output_path(config.output);
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open output file '" + path + "'");
  return run_command(config, out);
}

}  // namespace fadenet
