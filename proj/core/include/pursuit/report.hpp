#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pursuit/bench.hpp"

namespace pursuit {

/// Output schema version written into every CSV comment line and JSON object.
inline constexpr int kFormatVersion = 1;

/// Shortest round-trip decimal form; "nan", "inf" and "-inf" otherwise.
std::string format_number(double x);

/// Trial CSV, one row per trial. Column order:
///   trial,signal_seed,signal_norm,l2_error,rel_error,success,support_exact,
///   tail_term,tail_term_half,noise_norm,bound_ratio,iterations,matvecs,
///   halted_by,failure
/// Preceded by a "# pursuit format_version=1 config=<json>" line.
std::string trials_csv(const nlohmann::json& config, const std::vector<TrialRecord>& records);

/// Sweep CSV columns: m,s,valid,trials,successes,success_rate
/// (invalid cells print NA for the counts).
std::string sweep_csv(const nlohmann::json& config, const std::vector<SweepCell>& cells);

/// Scaling CSV columns: s,median_error,median_rel_error,failures
std::string scaling_csv(const nlohmann::json& config, const ScalingResult& result);

nlohmann::json summary_json(const nlohmann::json& config, const TrialSummary& summary);
nlohmann::json sweep_json(const nlohmann::json& config, const std::vector<SweepCell>& cells);
nlohmann::json scaling_json(const nlohmann::json& config, const ScalingResult& result);
nlohmann::json recovery_json(const RecoveryResult& result);

}  // namespace pursuit
