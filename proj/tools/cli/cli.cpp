#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pursuit/bench.hpp"
#include "pursuit/report.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/sensing.hpp"

namespace pursuit::cli {
namespace {

using nlohmann::json;

struct Params {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::string mode = "trials";
  int threads = 1;

  std::string algorithm = "cosamp";
  std::string ensemble = "gaussian";
  Index m = 128;
  Index n = 256;
  Index s = 8;
  std::uint64_t seed = 0;
  std::string signal = "sparse";
  double p = 0.5;
  double magnitude = 1.0;
  bool truncate = false;
  std::string noise = "none";
  double noise_level = 0.0;
  bool noise_relative = false;
  double eta = 1e-8;
  int max_iter = 100;
  int trials = 100;
  std::string m_list;
  std::string s_list;
  std::string summary_path;

  Index ric_n = 8;
  std::uint64_t probe_seed = 0;
};

// Leaves the caller's output untouched until the whole result exists.
struct Output {
  std::string body;
  std::string summary;
};

std::uint64_t parse_seed(const std::string& text, const char* what) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw UsageError(std::string(what) + " must be a non-negative integer, got '" + text + "'");
  return value;
}

std::vector<Index> parse_list(const std::string& text, const char* what) {
  std::vector<Index> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    long long v = 0;
    const char* end = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(item.data(), end, v);
    if (ec != std::errc{} || ptr != end || item.empty())
      throw UsageError(std::string(what) + ": '" + item + "' is not an integer");
    values.push_back(static_cast<Index>(v));
  }
  if (values.empty()) throw UsageError(std::string(what) + " must list at least one value");
  return values;
}

void require_choice(const std::string& value, std::initializer_list<const char*> allowed,
                    const char* what) {
  for (const char* a : allowed)
    if (value == a) return;
  throw UsageError(std::string("unknown ") + what + " '" + value + "'");
}

TrialConfig trial_config(const Params& p) {
  TrialConfig c;
  c.algorithm = algorithm_from_string(p.algorithm);
  c.ensemble = ensemble_from_string(p.ensemble);
  c.m = p.m;
  c.n = p.n;
  c.s = p.s;
  c.signal = trial_signal_from_string(p.signal);
  c.p = p.p;
  c.magnitude = p.magnitude;
  c.truncate = p.truncate;
  c.noise = noise_mode_from_string(p.noise);
  c.noise_level = p.noise_level;
  c.noise_relative = p.noise_relative;
  c.eta = p.eta;
  c.max_iter = p.max_iter;
  c.trials = p.trials;
  c.master_seed = p.seed;
  return c;
}

void add_trial_options(CLI::App& app, Params& p) {
  app.add_option("--alg", p.algorithm, "omp, romp or cosamp");
  app.add_option("--ensemble", p.ensemble, "gaussian, bernoulli, dct or identity");
  app.add_option("--m", p.m, "measurements");
  app.add_option("--N", p.n, "signal dimension");
  app.add_option("--s", p.s, "sparsity level");
  app.add_option("--seed", p.seed, "master seed (default: $PURSUIT_SEED, else 0)");
  app.add_option("--signal", p.signal, "sparse, compressible or zero");
  app.add_option("--p", p.p, "compressible decay exponent");
  app.add_option("--R", p.magnitude, "compressible magnitude");
  app.add_flag("--truncate", p.truncate, "zero the compressible tail beyond s");
  app.add_option("--noise", p.noise, "none, fixed or gaussian");
  app.add_option("--noise-level", p.noise_level, "noise norm (fixed) or sigma (gaussian)");
  app.add_flag("--noise-relative", p.noise_relative, "scale noise level by |Phi x|");
  app.add_option("--eta", p.eta, "CoSaMP halting residual, relative to |u|");
  app.add_option("--max-iter", p.max_iter, "CoSaMP iteration cap");
}

void add_common_options(CLI::App& app, Params& p, const char* formats) {
  app.add_option("--config", p.config_path, "JSON file of option values");
  app.add_option("--out", p.out_path, "output file (default: stdout)");
  app.add_option("--format", p.format, formats);
}

// Names accepted as config keys: every long option except --config and --help.
std::set<std::string> config_keys(const CLI::App& app) {
  std::set<std::string> keys;
  for (const CLI::Option* opt : app.get_options()) {
    for (const std::string& name : opt->get_lnames())
      if (name != "config" && name != "help") keys.insert(name);
  }
  return keys;
}

std::string scalar_token(const json& value, const std::string& key) {
  switch (value.type()) {
    case json::value_t::string:
      return value.get<std::string>();
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::number_float:
      return value.dump();
    default:
      throw UsageError("config key '" + key + "' has an unsupported value type");
  }
}

// Config values become flag tokens placed ahead of the command line, so the
// command line wins under take-last.
std::vector<std::string> config_tokens(const std::string& path, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file '" + path + "' must hold a JSON object");

  const auto keys = config_keys(app);
  std::vector<std::string> tokens;
  for (const auto& [raw, value] : doc.items()) {
    std::string key = raw;
    std::replace(key.begin(), key.end(), '_', '-');
    if (!keys.contains(key)) throw UsageError("unknown config key '" + raw + "'");
    const CLI::Option* opt = app.get_option("--" + key);
    if (opt->get_expected_min() == 0) {
      if (!value.is_boolean()) throw UsageError("config key '" + raw + "' must be a boolean");
      if (value.get<bool>()) tokens.push_back("--" + key);
      continue;
    }
    std::string token;
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) token += ',';
        token += scalar_token(value[i], raw);
      }
    } else {
      token = scalar_token(value, raw);
    }
    tokens.push_back("--" + key);
    tokens.push_back(token);
  }
  return tokens;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
    }
  }
  return path;
}

Output cmd_recover(const Params& p) {
  require_choice(p.format, {"json", "csv"}, "format");
  TrialConfig cfg = trial_config(p);
  cfg.trials = 1;
  cfg.validate();

  json config = cfg;
  config.erase("trials");
  const TrialArtifacts art = run_trial(cfg, 0);
  const TrialRecord& rec = art.record;
  if (rec.failure) throw SolverError(*rec.failure, rec.iterations);

  if (p.format == "csv") return {trials_csv(config, {rec}), {}};
  json j = recovery_json(*art.recovery);
  j["config"] = config;
  j["format_version"] = kFormatVersion;
  j["signal_norm"] = rec.signal_norm;
  j["noise_norm"] = rec.noise_norm;
  j["l2_error"] = rec.l2_error;
  j["rel_error"] = rec.rel_error;
  j["success"] = rec.success;
  j["support_exact"] = rec.support_exact;
  j["bound_ratio"] = rec.bound_ratio ? json(*rec.bound_ratio) : json(nullptr);
  return {j.dump(2) + "\n", {}};
}

Output cmd_bench(const Params& p) {
  require_choice(p.format, {"json", "csv"}, "format");
  require_choice(p.mode, {"trials", "scaling"}, "mode");
  if (p.threads < 1) throw UsageError("threads must be >= 1");
  const RunOptions run{p.threads};

  if (p.mode == "scaling") {
    ScalingConfig cfg;
    cfg.n = p.n;
    cfg.m = p.m;
    cfg.p = p.p;
    cfg.magnitude = p.magnitude;
    if (!p.s_list.empty()) cfg.s_values = parse_list(p.s_list, "s-list");
    cfg.ensemble = ensemble_from_string(p.ensemble);
    cfg.algorithm = algorithm_from_string(p.algorithm);
    cfg.trials = p.trials;
    cfg.truncate = p.truncate;
    cfg.eta = p.eta;
    cfg.max_iter = p.max_iter;
    cfg.master_seed = p.seed;
    cfg.validate();
    const json config = cfg;
    const ScalingResult result = compressible_scaling(cfg, run);
    if (p.format == "csv") return {scaling_csv(config, result), {}};
    return {scaling_json(config, result).dump(2) + "\n", {}};
  }

  const TrialConfig cfg = trial_config(p);
  cfg.validate();
  const json config = cfg;
  const auto records = run_trials(cfg, run);
  const TrialSummary summary = summarize(records);
  Output out;
  if (p.format == "csv") {
    out.body = trials_csv(config, records);
  } else {
    out.body = summary_json(config, summary).dump(2) + "\n";
  }
  if (!p.summary_path.empty()) out.summary = summary_json(config, summary).dump(2) + "\n";
  return out;
}

Output cmd_sweep(const Params& p) {
  require_choice(p.format, {"json", "csv"}, "format");
  if (p.threads < 1) throw UsageError("threads must be >= 1");
  SweepConfig cfg;
  cfg.n = p.n;
  cfg.m_values = parse_list(p.m_list, "m-list");
  cfg.s_values = parse_list(p.s_list, "s-list");
  cfg.ensemble = ensemble_from_string(p.ensemble);
  cfg.algorithm = algorithm_from_string(p.algorithm);
  cfg.trials_per_cell = p.trials;
  cfg.eta = p.eta;
  cfg.max_iter = p.max_iter;
  cfg.master_seed = p.seed;
  cfg.validate();
  const json config = cfg;
  const auto cells = phase_sweep(cfg, {p.threads});
  if (p.format == "csv") return {sweep_csv(config, cells), {}};
  return {sweep_json(config, cells).dump(2) + "\n", {}};
}

Output cmd_ric(const Params& p, bool probe_seed_given) {
  require_choice(p.format, {"json"}, "format");
  const OperatorDescriptor desc{ensemble_from_string(p.ensemble), p.m, p.n, p.seed};
  if (p.ric_n < 1) throw UsageError("n must be >= 1");
  if (p.ric_n > p.m) throw UsageError("n must be <= m");
  if (p.trials < 1) throw UsageError("trials must be >= 1");
  const SenseOperator op = desc.build();
  const std::uint64_t probe =
      probe_seed_given ? p.probe_seed : derive_seed(p.seed, 0, Stream::Probe);
  const RicEstimate est = empirical_ric(op, p.ric_n, p.trials, probe);
  json j{{"format_version", kFormatVersion},
         {"config", {{"operator", desc}, {"n", p.ric_n}, {"trials", p.trials}, {"seed", probe}}},
         {"n", est.n},
         {"delta_lower", est.delta_lower},
         {"trials", est.trials},
         {"seed", est.seed}};
  return {j.dump(2) + "\n", {}};
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  file.close();
  if (!file) {
    err << "pursuit: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  Params p;
  CLI::App app{"Greedy sparse recovery: OMP, ROMP and CoSaMP experiments", "pursuit"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  CLI::App* recover = app.add_subcommand("recover", "run one recovery on a synthetic instance");
  add_common_options(*recover, p, "json or csv");
  add_trial_options(*recover, p);

  CLI::App* bench = app.add_subcommand("bench", "Monte Carlo trials or compressible scaling");
  add_common_options(*bench, p, "json or csv");
  add_trial_options(*bench, p);
  bench->add_option("--trials", p.trials, "number of trials");
  bench->add_option("--threads", p.threads, "worker threads");
  bench->add_option("--mode", p.mode, "trials or scaling");
  bench->add_option("--s-list", p.s_list, "scaling mode sparsities, comma separated");
  bench->add_option("--summary", p.summary_path, "also write the JSON summary here");

  CLI::App* sweep = app.add_subcommand("sweep", "exact-recovery rate over an (m, s) grid");
  add_common_options(*sweep, p, "json or csv");
  sweep->add_option("--alg", p.algorithm, "omp, romp or cosamp");
  sweep->add_option("--ensemble", p.ensemble, "gaussian, bernoulli, dct or identity");
  sweep->add_option("--N", p.n, "signal dimension");
  sweep->add_option("--m-list", p.m_list, "measurement counts, comma separated")->required();
  sweep->add_option("--s-list", p.s_list, "sparsities, comma separated")->required();
  sweep->add_option("--trials", p.trials, "trials per cell");
  sweep->add_option("--eta", p.eta, "CoSaMP halting residual, relative to |u|");
  sweep->add_option("--max-iter", p.max_iter, "CoSaMP iteration cap");
  sweep->add_option("--seed", p.seed, "master seed (default: $PURSUIT_SEED, else 0)");
  sweep->add_option("--threads", p.threads, "worker threads");

  CLI::App* ric = app.add_subcommand("ric", "lower bound on the restricted isometry constant");
  add_common_options(*ric, p, "json");
  ric->add_option("--ensemble", p.ensemble, "gaussian, bernoulli, dct or identity");
  ric->add_option("--m", p.m, "measurements");
  ric->add_option("--N", p.n, "signal dimension");
  ric->add_option("--seed", p.seed, "operator seed (default: $PURSUIT_SEED, else 0)");
  ric->add_option("--n", p.ric_n, "support size");
  ric->add_option("--trials", p.trials, "number of random supports");
  ric->add_option("--probe-seed", p.probe_seed, "support sampling seed");

  if (args.empty()) {
    err << app.help();
    return kValidationError;
  }

  std::vector<std::string> argv = args;
  try {
    if (const auto path = find_config_path(args)) {
      CLI::App* sub = nullptr;
      for (CLI::App* c : {recover, bench, sweep, ric})
        if (c->get_name() == args.front()) sub = c;
      if (sub == nullptr) throw UsageError("--config must follow a subcommand");
      auto tokens = config_tokens(*path, *sub);
      argv.insert(argv.begin() + 1, tokens.begin(), tokens.end());
    }
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "pursuit: " << e.what() << "\n";
    return kValidationError;
  } catch (const UsageError& e) {
    err << "pursuit: " << e.what() << "\n";
    return kValidationError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Output result;
  try {
    if (chosen->count("--seed") == 0 && env.seed)
      p.seed = parse_seed(*env.seed, "PURSUIT_SEED");
    if (chosen == recover) result = cmd_recover(p);
    if (chosen == bench) result = cmd_bench(p);
    if (chosen == sweep) result = cmd_sweep(p);
    if (chosen == ric) result = cmd_ric(p, ric->count("--probe-seed") > 0);
  } catch (const UsageError& e) {
    err << "pursuit " << chosen->get_name() << ": " << e.what() << "\n";
    return kValidationError;
  } catch (const SolverError& e) {
    err << "pursuit " << chosen->get_name() << ": solver failure: " << e.what() << "\n";
    return kSolverFailure;
  }

  if (!p.summary_path.empty() && !write_file(p.summary_path, result.summary, err))
    return kIoError;
  if (p.out_path.empty()) {
    out << result.body;
  } else if (!write_file(p.out_path, result.body, err)) {
    return kIoError;
  }
  return kOk;
}

}  // namespace pursuit::cli
