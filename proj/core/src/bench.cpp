#include "pursuit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "pursuit/rng.hpp"

namespace pursuit {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Omp: return "omp";
    case Algorithm::Romp: return "romp";
    case Algorithm::Cosamp: return "cosamp";
  }
  return "unknown";
}

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "omp") return Algorithm::Omp;
  if (name == "romp") return Algorithm::Romp;
  if (name == "cosamp") return Algorithm::Cosamp;
  throw UsageError("unknown algorithm '" + std::string(name) + "' (expected omp, romp or cosamp)");
}

std::string_view to_string(TrialSignal k) {
  switch (k) {
    case TrialSignal::Sparse: return "sparse";
    case TrialSignal::Compressible: return "compressible";
    case TrialSignal::Zero: return "zero";
  }
  return "unknown";
}

TrialSignal trial_signal_from_string(std::string_view name) {
  if (name == "sparse") return TrialSignal::Sparse;
  if (name == "compressible") return TrialSignal::Compressible;
  if (name == "zero") return TrialSignal::Zero;
  throw UsageError("unknown signal kind '" + std::string(name) +
                   "' (expected sparse, compressible or zero)");
}

std::string_view to_string(NoiseMode m) {
  switch (m) {
    case NoiseMode::None: return "none";
    case NoiseMode::FixedNorm: return "fixed";
    case NoiseMode::GaussianSigma: return "gaussian";
  }
  return "unknown";
}

NoiseMode noise_mode_from_string(std::string_view name) {
  if (name == "none") return NoiseMode::None;
  if (name == "fixed") return NoiseMode::FixedNorm;
  if (name == "gaussian") return NoiseMode::GaussianSigma;
  throw UsageError("unknown noise mode '" + std::string(name) +
                   "' (expected none, fixed or gaussian)");
}

bool algorithm_accepts(Algorithm algorithm, Index m, Index n, Index s) {
  if (m < 1 || n < 1 || m > n || s < 1 || s > n) return false;
  switch (algorithm) {
    case Algorithm::Omp:
    case Algorithm::Romp:
      return s <= m;
    case Algorithm::Cosamp:
      return 3 * s <= m;
  }
  return false;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

std::string dims(Index m, Index n, Index s) {
  return "m=" + std::to_string(m) + ", N=" + std::to_string(n) + ", s=" + std::to_string(s);
}

void require_algorithm(Algorithm algorithm, Ensemble ensemble, Index m, Index n, Index s) {
  require(n >= 1, "N must be >= 1");
  require(m >= 1 && m <= n, "need 1 <= m <= N (" + dims(m, n, s) + ")");
  require(s >= 1 && s <= n, "need 1 <= s <= N (" + dims(m, n, s) + ")");
  require(ensemble != Ensemble::Identity || m == n, "identity ensemble requires m == N");
  if (algorithm == Algorithm::Cosamp)
    require(3 * s <= m, "cosamp requires 3s <= m (" + dims(m, n, s) + ")");
  else
    require(s <= m, std::string(to_string(algorithm)) + " requires s <= m (" + dims(m, n, s) + ")");
}

}  // namespace

void TrialConfig::validate() const {
  require_algorithm(algorithm, ensemble, m, n, s);
  if (signal == TrialSignal::Compressible) {
    require(p > 0.0 && std::isfinite(p), "p must be positive");
    require(magnitude > 0.0 && std::isfinite(magnitude), "R must be positive");
  }
  require(noise_level >= 0.0 && std::isfinite(noise_level), "noise level must be finite and >= 0");
  require(eta >= 0.0 && std::isfinite(eta), "eta must be finite and >= 0");
  require(max_iter >= 1, "max_iter must be >= 1");
  require(trials >= 1, "trials must be >= 1");
}

void to_json(nlohmann::json& j, const TrialConfig& c) {
  j = nlohmann::json{
      {"algorithm", to_string(c.algorithm)},
      {"ensemble", to_string(c.ensemble)},
      {"m", c.m},
      {"N", c.n},
      {"s", c.s},
      {"signal", to_string(c.signal)},
      {"noise", to_string(c.noise)},
      {"noise_level", c.noise_level},
      {"noise_relative", c.noise_relative},
      {"eta", c.eta},
      {"max_iter", c.max_iter},
      {"trials", c.trials},
      {"seed", c.master_seed},
  };
  if (c.signal == TrialSignal::Compressible) {
    j["p"] = c.p;
    j["R"] = c.magnitude;
    j["truncate"] = c.truncate;
  }
}

TrialArtifacts run_trial(const TrialConfig& cfg, int trial_index) {
  const auto start = std::chrono::steady_clock::now();
  const auto idx = static_cast<std::uint64_t>(trial_index);

  TrialArtifacts out;
  TrialRecord& rec = out.record;
  rec.trial_index = trial_index;

  const SenseOperator op =
      make_operator(cfg.ensemble, cfg.m, cfg.n, derive_seed(cfg.master_seed, idx, Stream::Operator));
  const auto signal_seed = derive_seed(cfg.master_seed, idx, Stream::Signal);
  rec.signal_seed = signal_seed;
  switch (cfg.signal) {
    case TrialSignal::Sparse:
      out.signal = gen_sparse(cfg.n, cfg.s, signal_seed);
      break;
    case TrialSignal::Compressible:
      out.signal = gen_compressible(cfg.n, cfg.p, cfg.magnitude, signal_seed);
      if (cfg.truncate) out.signal.values = head(out.signal.values, cfg.s);
      break;
    case TrialSignal::Zero:
      out.signal = make_arbitrary(Vector::Zero(cfg.n));
      break;
  }
  const Vector& x = out.signal.values;

  double level = cfg.noise_level;
  if (cfg.noise_relative && cfg.noise != NoiseMode::None) {
    level *= op.forward(x).norm();
    if (cfg.noise == NoiseMode::GaussianSigma) level /= std::sqrt(static_cast<double>(cfg.m));
  }
  out.measurement = measure(op, out.signal,
                            {cfg.noise, level, derive_seed(cfg.master_seed, idx, Stream::Noise)});
  const Vector& u = out.measurement.u;

  rec.signal_norm = x.norm();
  rec.noise_norm = out.measurement.e.norm();
  const double root_s = std::sqrt(static_cast<double>(cfg.s));
  rec.tail_term = tail_l1(x, cfg.s) / root_s;
  rec.tail_term_half = tail_l1(x, cfg.s / 2) / root_s;

  try {
    switch (cfg.algorithm) {
      case Algorithm::Omp:
        out.recovery = omp(op, u, cfg.s);
        break;
      case Algorithm::Romp:
        out.recovery = romp(op, u, cfg.s);
        break;
      case Algorithm::Cosamp: {
        CosampOptions opts;
        opts.eta = cfg.eta * u.norm();
        opts.max_iter = cfg.max_iter;
        out.recovery = cosamp(op, u, cfg.s, opts);
        break;
      }
    }
  } catch (const std::exception& e) {
    rec.failure = e.what();
  }

  if (out.recovery) {
    const RecoveryResult& r = *out.recovery;
    rec.l2_error = (r.estimate - x).norm();
    rec.rel_error = rec.signal_norm > 0.0 ? rec.l2_error / rec.signal_norm : rec.l2_error;
    rec.success = rec.l2_error <= kSuccessTolerance * rec.signal_norm;
    rec.support_exact = SupportSet::of(r.estimate) == SupportSet::of(head(x, cfg.s));
    const double tail = cfg.algorithm == Algorithm::Cosamp ? rec.tail_term_half : rec.tail_term;
    const double denom = tail + rec.noise_norm;
    if (denom > 0.0) rec.bound_ratio = rec.l2_error / denom;
    rec.iterations = r.iterations;
    rec.matvecs = r.matvecs;
    rec.halted_by = r.halted_by;
  } else {
    rec.l2_error = std::numeric_limits<double>::quiet_NaN();
    rec.rel_error = rec.l2_error;
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers.
template <typename Body>
void parallel_for(int count, int threads, Body&& body) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int i = next++; i < count && !failed; i = next++) {
          try {
            body(i);
          } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<TrialRecord> run_trials(const TrialConfig& cfg, const RunOptions& run) {
  cfg.validate();
  require(run.threads >= 1, "threads must be >= 1");
  std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, run.threads, [&](int i) {
    records[static_cast<std::size_t>(i)] = run_trial(cfg, i).record;
  });
  return records;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

TrialSummary summarize(const std::vector<TrialRecord>& records) {
  TrialSummary s;
  s.trials = static_cast<int>(records.size());
  std::vector<double> l2;
  std::vector<double> rel;
  std::vector<double> ratios;
  double iterations = 0.0;
  double matvecs = 0.0;
  for (const auto& r : records) {
    if (r.failure) {
      ++s.failures;
      continue;
    }
    s.successes += r.success ? 1 : 0;
    s.support_exact += r.support_exact ? 1 : 0;
    l2.push_back(r.l2_error);
    rel.push_back(r.rel_error);
    if (r.bound_ratio) ratios.push_back(*r.bound_ratio);
    s.max_iterations = std::max(s.max_iterations, r.iterations);
    iterations += r.iterations;
    matvecs += static_cast<double>(r.matvecs);
  }
  const auto completed = static_cast<double>(l2.size());
  s.success_rate = s.trials > 0 ? static_cast<double>(s.successes) / s.trials : 0.0;
  s.median_l2_error = median(l2);
  s.median_rel_error = median(rel);
  if (!ratios.empty()) s.median_bound_ratio = median(ratios);
  if (completed > 0) {
    s.mean_iterations = iterations / completed;
    s.mean_matvecs = matvecs / completed;
  }
  return s;
}

void SweepConfig::validate() const {
  require(n >= 1, "N must be >= 1");
  require(!m_values.empty(), "sweep needs at least one m value");
  require(!s_values.empty(), "sweep needs at least one s value");
  for (Index m : m_values)
    require(m >= 1 && m <= n, "sweep m values must lie in [1, N] (got m=" + std::to_string(m) + ")");
  for (Index s : s_values)
    require(s >= 1 && s <= n, "sweep s values must lie in [1, N] (got s=" + std::to_string(s) + ")");
  require(trials_per_cell >= 1, "trials must be >= 1");
  require(eta >= 0.0 && std::isfinite(eta), "eta must be finite and >= 0");
  require(max_iter >= 1, "max_iter must be >= 1");
}

void to_json(nlohmann::json& j, const SweepConfig& c) {
  j = nlohmann::json{
      {"algorithm", to_string(c.algorithm)},
      {"ensemble", to_string(c.ensemble)},
      {"N", c.n},
      {"m_values", c.m_values},
      {"s_values", c.s_values},
      {"trials", c.trials_per_cell},
      {"eta", c.eta},
      {"max_iter", c.max_iter},
      {"seed", c.master_seed},
  };
}

std::vector<SweepCell> phase_sweep(const SweepConfig& cfg, const RunOptions& run) {
  cfg.validate();
  std::vector<SweepCell> cells;
  for (Index m : cfg.m_values) {
    for (Index s : cfg.s_values) {
      SweepCell cell;
      cell.m = m;
      cell.s = s;
      cell.valid = algorithm_accepts(cfg.algorithm, m, cfg.n, s) &&
                   (cfg.ensemble != Ensemble::Identity || m == cfg.n);
      if (cell.valid) {
        TrialConfig tc;
        tc.ensemble = cfg.ensemble;
        tc.m = m;
        tc.n = cfg.n;
        tc.s = s;
        tc.algorithm = cfg.algorithm;
        tc.eta = cfg.eta;
        tc.max_iter = cfg.max_iter;
        tc.trials = cfg.trials_per_cell;
        tc.master_seed = cfg.master_seed;
        const auto records = run_trials(tc, run);
        cell.trials = tc.trials;
        for (const auto& r : records) cell.successes += r.success ? 1 : 0;
        cell.success_rate = static_cast<double>(cell.successes) / cell.trials;
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

void ScalingConfig::validate() const {
  require(p > 0.0 && std::isfinite(p), "p must be positive");
  require(magnitude > 0.0 && std::isfinite(magnitude), "R must be positive");
  require(!s_values.empty(), "scaling needs at least one s value");
  for (Index s : s_values) require_algorithm(algorithm, ensemble, m, n, s);
  require(trials >= 1, "trials must be >= 1");
  require(eta >= 0.0 && std::isfinite(eta), "eta must be finite and >= 0");
  require(max_iter >= 1, "max_iter must be >= 1");
}

void to_json(nlohmann::json& j, const ScalingConfig& c) {
  j = nlohmann::json{
      {"algorithm", to_string(c.algorithm)},
      {"ensemble", to_string(c.ensemble)},
      {"m", c.m},
      {"N", c.n},
      {"p", c.p},
      {"R", c.magnitude},
      {"s_values", c.s_values},
      {"trials", c.trials},
      {"truncate", c.truncate},
      {"eta", c.eta},
      {"max_iter", c.max_iter},
      {"seed", c.master_seed},
  };
}

ScalingResult compressible_scaling(const ScalingConfig& cfg, const RunOptions& run) {
  cfg.validate();
  ScalingResult out;
  for (Index s : cfg.s_values) {
    TrialConfig tc;
    tc.ensemble = cfg.ensemble;
    tc.m = cfg.m;
    tc.n = cfg.n;
    tc.s = s;
    tc.signal = TrialSignal::Compressible;
    tc.p = cfg.p;
    tc.magnitude = cfg.magnitude;
    tc.truncate = cfg.truncate;
    tc.algorithm = cfg.algorithm;
    tc.eta = cfg.eta;
    tc.max_iter = cfg.max_iter;
    tc.trials = cfg.trials;
    tc.master_seed = cfg.master_seed;
    const TrialSummary summary = summarize(run_trials(tc, run));
    out.rows.push_back({s, summary.median_l2_error, summary.median_rel_error, summary.failures});
  }

  // Degenerate when errors sit at round-off level (exactly sparse input) or
  // too few points remain for a line.
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : out.rows) {
    if (row.s < 2) continue;
    if (!(row.median_error > 1e-10 * cfg.magnitude)) {
      out.degenerate = true;
      break;
    }
    const double log_s = std::log(static_cast<double>(row.s));
    xs.push_back(log_s);
    ys.push_back(std::log(row.median_error / std::sqrt(log_s)));
  }
  if (out.degenerate || xs.size() < 2) {
    out.degenerate = true;
    return out;
  }
  const auto count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) {
    out.degenerate = true;
    return out;
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double resid = ys[i] - (intercept + slope * xs[i]);
    sse += resid * resid;
  }
  out.slope = slope;
  out.intercept = intercept;
  out.fit_rms = std::sqrt(sse / count);
  return out;
}

}  // namespace pursuit
