#include "fadenet/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace fadenet {

namespace {

using nlohmann::json;

const char* const kKnownKeys[] = {
    "subcommand", "n",       "n_list",      "rho",    "fading",
    "fading_mean", "table_x", "table_cdf",  "threshold_mode",
    "delta",      "xi",      "psi",         "phi",    "trials",
    "samples",    "seed",    "mode",        "output", "threads",
    "bits",       "oracle_grid",
};

bool known_key(const std::string& key) {
  for (const char* k : kKnownKeys)
    if (key == k) return true;
  return false;
}

[[noreturn]] void field_error(const std::string& field,
                              const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

template <typename T>
T get_number(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "must be a number");
  return j.get<T>();
}

std::uint64_t get_count(const json& j, const std::string& field) {
  if (!j.is_number_unsigned()) field_error(field, "must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

}  // namespace

const char* subcommand_name(Subcommand c) {
  switch (c) {
    case Subcommand::Simulate: return "simulate";
    case Subcommand::OptimizeThreshold: return "optimize-threshold";
    case Subcommand::SolveThreshold: return "solve-threshold";
    case Subcommand::Asymptotics: return "asymptotics";
    case Subcommand::Oracle: return "oracle";
    case Subcommand::Sweep: return "sweep";
    case Subcommand::VerifyBounds: return "verify-bounds";
  }
  return "?";
}

RawConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") +
                      e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  RawConfig raw;
  for (const auto& [key, value] : j.items()) {
    if (!known_key(key)) throw ConfigError("unknown config key '" + key + "'");
    if (key == "subcommand") {
      if (!value.is_string()) field_error(key, "must be a string");
      raw.subcommand = value.get<std::string>();
    } else if (key == "n") {
      raw.n_list = std::vector<std::uint64_t>{get_count(value, key)};
    } else if (key == "n_list") {
      if (!value.is_array() || value.empty())
        field_error(key, "must be a nonempty array of integers");
      std::vector<std::uint64_t> ns;
      for (const auto& e : value) ns.push_back(get_count(e, key));
      raw.n_list = std::move(ns);
    } else if (key == "rho") {
      raw.rho = get_number<double>(value, key);
    } else if (key == "fading") {
      if (!value.is_string()) field_error(key, "must be a string");
      raw.fading = value.get<std::string>();
    } else if (key == "fading_mean") {
      raw.fading_mean = get_number<double>(value, key);
    } else if (key == "table_x" || key == "table_cdf") {
      if (!value.is_array()) field_error(key, "must be an array of numbers");
      std::vector<double> xs;
      for (const auto& e : value) xs.push_back(get_number<double>(e, key));
      (key == "table_x" ? raw.table_x : raw.table_cdf) = std::move(xs);
    } else if (key == "threshold_mode") {
      if (!value.is_string()) field_error(key, "must be a string");
      raw.threshold_mode = value.get<std::string>();
    } else if (key == "delta") {
      raw.delta = get_number<double>(value, key);
    } else if (key == "xi" || key == "psi" || key == "phi") {
      std::string s;
      if (value.is_string())
        s = value.get<std::string>();
      else if (value.is_number())
        s = value.dump();
      else
        field_error(key, "must be \"default\" or a number");
      (key == "xi" ? raw.xi : key == "psi" ? raw.psi : raw.phi) = s;
    } else if (key == "trials") {
      raw.trials = get_count(value, key);
    } else if (key == "samples") {
      raw.samples = get_count(value, key);
    } else if (key == "seed") {
      raw.seed = get_count(value, key);
    } else if (key == "mode") {
      if (!value.is_string()) field_error(key, "must be a string");
      raw.mode = value.get<std::string>();
    } else if (key == "output") {
      if (!value.is_string()) field_error(key, "must be a string");
      raw.output = value.get<std::string>();
    } else if (key == "threads") {
      raw.threads = static_cast<unsigned>(get_count(value, key));
    } else if (key == "bits") {
      if (!value.is_boolean()) field_error(key, "must be a boolean");
      raw.bits = value.get<bool>();
    } else if (key == "oracle_grid") {
      raw.oracle_grid = static_cast<std::uint32_t>(get_count(value, key));
    }
  }
  return raw;
}

RawConfig merge_config(RawConfig base, const RawConfig& over) {
  const auto take = [](auto& dst, const auto& src) {
    if (src.has_value()) dst = src;
  };
  take(base.subcommand, over.subcommand);
  take(base.n_list, over.n_list);
  take(base.rho, over.rho);
  take(base.fading, over.fading);
  take(base.fading_mean, over.fading_mean);
  take(base.table_x, over.table_x);
  take(base.table_cdf, over.table_cdf);
  take(base.threshold_mode, over.threshold_mode);
  take(base.delta, over.delta);
  take(base.xi, over.xi);
  take(base.psi, over.psi);
  take(base.phi, over.phi);
  take(base.trials, over.trials);
  take(base.samples, over.samples);
  take(base.seed, over.seed);
  take(base.mode, over.mode);
  take(base.output, over.output);
  take(base.threads, over.threads);
  take(base.bits, over.bits);
  take(base.oracle_grid, over.oracle_grid);
  return base;
}

namespace {

struct SlackChoice {
  bool is_default = true;
  double value = 0.0;
};

SlackChoice parse_slack(const std::optional<std::string>& raw,
                        const std::string& field) {
  if (!raw || *raw == "default") return {true, 0.0};
  double v = 0.0;
  const char* begin = raw->data();
  const char* end = begin + raw->size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    field_error(field, "must be \"default\" or a number, got '" + *raw + "'");
  if (!(v >= 0.0)) field_error(field, "must be >= 0");
  return {false, v};
}

SlackRule slack_rule(const SlackChoice& c, const SlackRule& dflt) {
  return c.is_default ? dflt : slack::constant(c.value);
}

}  // namespace

std::uint64_t RunConfig::single_n() const {
  if (n_list.size() != 1)
    throw ConfigError("config field 'n': this subcommand takes exactly one n");
  return n_list.front();
}

ThresholdPolicy RunConfig::policy(double delta) const {
  return ThresholdPolicy{delta, xi_rule, psi_rule, fading};
}

RunConfig resolve_config(const RawConfig& raw) {
  RunConfig cfg;

  if (!raw.subcommand) throw ConfigError("missing subcommand");
  const std::string& cmd = *raw.subcommand;
  if (cmd == "simulate") cfg.command = Subcommand::Simulate;
  else if (cmd == "optimize-threshold") cfg.command = Subcommand::OptimizeThreshold;
  else if (cmd == "solve-threshold") cfg.command = Subcommand::SolveThreshold;
  else if (cmd == "asymptotics") cfg.command = Subcommand::Asymptotics;
  else if (cmd == "oracle") cfg.command = Subcommand::Oracle;
  else if (cmd == "sweep") cfg.command = Subcommand::Sweep;
  else if (cmd == "verify-bounds") cfg.command = Subcommand::VerifyBounds;
  else throw ConfigError("unknown subcommand '" + cmd + "'");

  if (!raw.n_list || raw.n_list->empty())
    field_error("n", "required (one value, or a list for sweep/asymptotics)");
  cfg.n_list = *raw.n_list;
  for (std::uint64_t n : cfg.n_list)
    if (n < 1) field_error("n", "must be >= 1");
  const bool multi_n_ok = cfg.command == Subcommand::Sweep ||
                          cfg.command == Subcommand::Asymptotics;
  if (!multi_n_ok && cfg.n_list.size() != 1)
    field_error("n", "this subcommand takes exactly one n");

  cfg.rho = raw.rho.value_or(1.0);
  if (!(cfg.rho > 0.0) || !std::isfinite(cfg.rho))
    field_error("rho", "must be positive and finite");

  const std::string fading = raw.fading.value_or("rayleigh");
  try {
    if (fading == "rayleigh") {
      if (raw.fading_mean) field_error("fading_mean", "only valid for exponential fading");
      cfg.fading = FadingSpec::rayleigh();
    } else if (fading == "exponential") {
      cfg.fading = FadingSpec::exponential(raw.fading_mean.value_or(1.0));
    } else if (fading == "table") {
      if (!raw.table_x || !raw.table_cdf)
        field_error("fading", "table fading needs table_x and table_cdf");
      cfg.fading = FadingSpec::table(*raw.table_x, *raw.table_cdf);
    } else {
      field_error("fading", "must be rayleigh, exponential, or table");
    }
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError(std::string("config field 'fading': ") + e.what());
  }

  const std::string mode_name = raw.threshold_mode.value_or(
      raw.delta ? "fixed" : "optimize");
  if (mode_name == "fixed") cfg.threshold_mode = ThresholdMode::Fixed;
  else if (mode_name == "optimize") cfg.threshold_mode = ThresholdMode::Optimize;
  else if (mode_name == "zero-order") cfg.threshold_mode = ThresholdMode::ZeroOrder;
  else if (mode_name == "asymptotic") cfg.threshold_mode = ThresholdMode::Asymptotic;
  else field_error("threshold_mode",
                   "must be fixed, optimize, zero-order, or asymptotic");
  if (raw.delta && cfg.threshold_mode != ThresholdMode::Fixed)
    field_error("delta", "a fixed delta conflicts with threshold_mode '" +
                             mode_name + "'");
  if (cfg.threshold_mode == ThresholdMode::Fixed) {
    if (!raw.delta) field_error("delta", "required for threshold_mode 'fixed'");
    if (!(*raw.delta >= 0.0)) field_error("delta", "must be >= 0");
    cfg.fixed_delta = *raw.delta;
  }

  const SlackChoice xi = parse_slack(raw.xi, "xi");
  const SlackChoice psi = parse_slack(raw.psi, "psi");
  const SlackChoice phi = parse_slack(raw.phi, "phi");
  cfg.xi_rule = slack_rule(xi, slack::sqrt_log_log());
  cfg.psi_rule = slack_rule(psi, slack::log_n());
  cfg.phi_rule = slack_rule(phi, slack::log_log());

  cfg.trials = raw.trials.value_or(100);
  if (cfg.trials < 1) field_error("trials", "must be >= 1");
  if (cfg.command == Subcommand::Sweep && cfg.trials < 30)
    field_error("trials", "sweep aggregates need at least 30 trials");
  cfg.samples = raw.samples.value_or(100000);
  if (cfg.samples < 100) field_error("samples", "must be >= 100");
  cfg.seed = raw.seed.value_or(1);

  const std::string mode = raw.mode.value_or("virtual");
  if (mode == "dense") cfg.mode = TrialMode::Dense;
  else if (mode == "virtual") cfg.mode = TrialMode::Virtual;
  else field_error("mode", "must be dense or virtual");

  cfg.output = raw.output.value_or("");
  cfg.threads = raw.threads.value_or(1);
  if (cfg.threads < 1) field_error("threads", "must be >= 1");
  cfg.bits = raw.bits.value_or(false);
  cfg.oracle_grid = raw.oracle_grid.value_or(64);
  if (cfg.oracle_grid < 1) field_error("oracle_grid", "must be >= 1");

  // Canonical echo of the fully resolved configuration (sorted keys).
  // Only result-determining fields appear: the worker cap and output path
  // never change report contents, and echoing them would break the
  // byte-identity contract across equivalent invocations.
  json echo;
  echo["subcommand"] = subcommand_name(cfg.command);
  if (cfg.n_list.size() == 1)
    echo["n"] = cfg.n_list.front();
  else
    echo["n_list"] = cfg.n_list;
  echo["rho"] = cfg.rho;
  echo["fading"] = fading;
  if (fading == "exponential") echo["fading_mean"] = cfg.fading.mean();
  if (fading == "table") {
    echo["table_x"] = *raw.table_x;
    echo["table_cdf"] = *raw.table_cdf;
  }
  echo["threshold_mode"] = mode_name;
  if (cfg.threshold_mode == ThresholdMode::Fixed)
    echo["delta"] = cfg.fixed_delta;
  echo["xi"] = xi.is_default ? json("default") : json(xi.value);
  echo["psi"] = psi.is_default ? json("default") : json(psi.value);
  echo["phi"] = phi.is_default ? json("default") : json(phi.value);
  echo["trials"] = cfg.trials;
  echo["samples"] = cfg.samples;
  echo["seed"] = cfg.seed;
  echo["mode"] = mode;
  echo["bits"] = cfg.bits;
  echo["oracle_grid"] = cfg.oracle_grid;
  cfg.echo = echo.dump();
  return cfg;
}

}  // namespace fadenet
