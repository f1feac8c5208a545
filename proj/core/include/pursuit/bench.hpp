#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pursuit/greedy.hpp"
#include "pursuit/sensing.hpp"
#include "pursuit/signals.hpp"

namespace pursuit {

enum class Algorithm { Omp, Romp, Cosamp };

std::string_view to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view name);

enum class TrialSignal {
  Sparse,        // gen_sparse(N, s)
  Compressible,  // gen_compressible(N, p, R)
  Zero,
};

std::string_view to_string(TrialSignal k);
TrialSignal trial_signal_from_string(std::string_view name);
std::string_view to_string(NoiseMode m);
NoiseMode noise_mode_from_string(std::string_view name);

struct TrialConfig {
  Ensemble ensemble = Ensemble::Gaussian;
  Index m = 128;
  Index n = 256;
  Index s = 8;
  TrialSignal signal = TrialSignal::Sparse;
  double p = 0.5;
  double magnitude = 1.0;
  // Compressible only: keep head(x, s) so the signal is exactly s-sparse.
  bool truncate = false;
  NoiseMode noise = NoiseMode::None;
  double noise_level = 0.0;
  // Scale the noise level by |Phi x|_2: FixedNorm eps = level |Phi x|,
  // GaussianSigma sigma = level |Phi x| / sqrt(m).
  bool noise_relative = false;
  Algorithm algorithm = Algorithm::Cosamp;
  // CoSaMP residual target as a fraction of |u|_2.
  double eta = 1e-8;
  int max_iter = 100;
  int trials = 100;
  std::uint64_t master_seed = 0;

  // Throws UsageError naming the first violated precondition.
  void validate() const;
};

void to_json(nlohmann::json& j, const TrialConfig& c);

/// Exact recovery threshold on |x_hat - x|_2 / |x|_2.
inline constexpr double kSuccessTolerance = 1e-6;

struct TrialRecord {
  int trial_index = 0;
  std::uint64_t signal_seed = 0;
  double signal_norm = 0.0;
  double l2_error = 0.0;
  double rel_error = 0.0;
  bool success = false;
  bool support_exact = false;
  double tail_term = 0.0;       // |x - x_s|_1 / sqrt(s)
  double tail_term_half = 0.0;  // |x - x_{s/2}|_1 / sqrt(s)
  double noise_norm = 0.0;
  std::optional<double> bound_ratio;  // absent when the denominator is 0
  int iterations = 0;
  std::uint64_t matvecs = 0;
  HaltReason halted_by = HaltReason::MaxIterations;
  std::optional<std::string> failure;
  double wall_seconds = 0.0;  // never written to deterministic outputs
};

/// Everything one trial produced, for callers that need the iterates.
struct TrialArtifacts {
  TrialRecord record;
  Signal signal;
  Measurement measurement;
  std::optional<RecoveryResult> recovery;
};

struct RunOptions {
  int threads = 1;
};

/// One trial of `cfg`: operator, signal and noise come from independent
/// streams derived from (master_seed, trial_index). Algorithm failures are
/// captured in record.failure.
TrialArtifacts run_trial(const TrialConfig& cfg, int trial_index);

/// All trials of `cfg`, ordered by trial index regardless of thread count.
std::vector<TrialRecord> run_trials(const TrialConfig& cfg, const RunOptions& run = {});

struct TrialSummary {
  int trials = 0;
  int failures = 0;
  int successes = 0;
  int support_exact = 0;
  double success_rate = 0.0;
  double median_l2_error = 0.0;
  double median_rel_error = 0.0;
  std::optional<double> median_bound_ratio;
  int max_iterations = 0;
  double mean_iterations = 0.0;
  double mean_matvecs = 0.0;
};

TrialSummary summarize(const std::vector<TrialRecord>& records);

double median(std::vector<double> values);

// --- phase transition ---------------------------------------------------

struct SweepConfig {
  Index n = 256;
  std::vector<Index> m_values;
  std::vector<Index> s_values;
  Ensemble ensemble = Ensemble::Gaussian;
  Algorithm algorithm = Algorithm::Cosamp;
  int trials_per_cell = 20;
  double eta = 1e-8;
  int max_iter = 100;
  std::uint64_t master_seed = 0;

  void validate() const;
};

void to_json(nlohmann::json& j, const SweepConfig& c);

struct SweepCell {
  Index m = 0;
  Index s = 0;
  bool valid = false;  // false: cell violates the algorithm's preconditions
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
};

/// Exact-recovery rate over an (m, s) grid, m-major. Every cell reuses the
/// same per-trial seeds, so cells differ only in m and s.
std::vector<SweepCell> phase_sweep(const SweepConfig& cfg, const RunOptions& run = {});

/// Whether `algorithm` accepts sparsity s with m measurements of dimension n.
bool algorithm_accepts(Algorithm algorithm, Index m, Index n, Index s);

// --- compressible scaling -----------------------------------------------

struct ScalingConfig {
  Index n = 1024;
  Index m = 512;
  double p = 0.5;
  double magnitude = 1.0;
  std::vector<Index> s_values{4, 8, 16, 32};
  Ensemble ensemble = Ensemble::Gaussian;
  Algorithm algorithm = Algorithm::Cosamp;
  int trials = 25;
  bool truncate = false;
  double eta = 1e-8;
  int max_iter = 100;
  std::uint64_t master_seed = 0;

  void validate() const;
};

void to_json(nlohmann::json& j, const ScalingConfig& c);

struct ScalingRow {
  Index s = 0;
  double median_error = 0.0;
  double median_rel_error = 0.0;
  int failures = 0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  // Least-squares fit of log(median / sqrt(log s)) against log s over the
  // rows with s >= 2. Absent when the fit is degenerate.
  std::optional<double> slope;
  std::optional<double> intercept;
  std::optional<double> fit_rms;
  bool degenerate = false;
};

ScalingResult compressible_scaling(const ScalingConfig& cfg, const RunOptions& run = {});

}  // namespace pursuit
