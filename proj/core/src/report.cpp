#include "pursuit/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace pursuit {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string preamble(const nlohmann::json& config) {
  return "# pursuit format_version=" + std::to_string(kFormatVersion) +
         " config=" + config.dump() + "\n";
}

// Failure messages may contain commas or quotes.
std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

const char* flag(bool b) { return b ? "1" : "0"; }

// nlohmann serializes NaN as null; keep that explicit.
nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

std::string trials_csv(const nlohmann::json& config, const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  os << preamble(config);
  os << "trial,signal_seed,signal_norm,l2_error,rel_error,success,support_exact,tail_term,"
        "tail_term_half,noise_norm,bound_ratio,iterations,matvecs,halted_by,failure\n";
  for (const auto& r : records) {
    os << r.trial_index << ',' << r.signal_seed << ',' << format_number(r.signal_norm) << ','
       << format_number(r.l2_error) << ',' << format_number(r.rel_error) << ','
       << flag(r.success) << ',' << flag(r.support_exact) << ',' << format_number(r.tail_term)
       << ',' << format_number(r.tail_term_half) << ',' << format_number(r.noise_norm) << ','
       << (r.bound_ratio ? format_number(*r.bound_ratio) : std::string("NA")) << ','
       << r.iterations << ',' << r.matvecs << ','
       << (r.failure ? std::string("failed") : std::string(to_string(r.halted_by))) << ','
       << (r.failure ? csv_field(*r.failure) : std::string()) << '\n';
  }
  return os.str();
}

std::string sweep_csv(const nlohmann::json& config, const std::vector<SweepCell>& cells) {
  std::ostringstream os;
  os << preamble(config);
  os << "m,s,valid,trials,successes,success_rate\n";
  for (const auto& c : cells) {
    os << c.m << ',' << c.s << ',' << flag(c.valid) << ',';
    if (c.valid)
      os << c.trials << ',' << c.successes << ',' << format_number(c.success_rate) << '\n';
    else
      os << "NA,NA,NA\n";
  }
  return os.str();
}

std::string scaling_csv(const nlohmann::json& config, const ScalingResult& result) {
  std::ostringstream os;
  os << preamble(config);
  os << "s,median_error,median_rel_error,failures\n";
  for (const auto& r : result.rows)
    os << r.s << ',' << format_number(r.median_error) << ',' << format_number(r.median_rel_error)
       << ',' << r.failures << '\n';
  return os.str();
}

nlohmann::json summary_json(const nlohmann::json& config, const TrialSummary& s) {
  return {
      {"format_version", kFormatVersion},
      {"config", config},
      {"aggregate",
       {
           {"trials", s.trials},
           {"failures", s.failures},
           {"successes", s.successes},
           {"support_exact", s.support_exact},
           {"success_rate", s.success_rate},
           {"median_l2_error", number_or_null(s.median_l2_error)},
           {"median_rel_error", number_or_null(s.median_rel_error)},
           {"median_bound_ratio",
            s.median_bound_ratio ? number_or_null(*s.median_bound_ratio) : nlohmann::json(nullptr)},
           {"max_iterations", s.max_iterations},
           {"mean_iterations", s.mean_iterations},
           {"mean_matvecs", s.mean_matvecs},
       }},
  };
}

nlohmann::json sweep_json(const nlohmann::json& config, const std::vector<SweepCell>& cells) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json row{{"m", c.m}, {"s", c.s}, {"valid", c.valid}};
    if (c.valid) {
      row["trials"] = c.trials;
      row["successes"] = c.successes;
      row["success_rate"] = c.success_rate;
    }
    rows.push_back(std::move(row));
  }
  return {{"format_version", kFormatVersion}, {"config", config}, {"cells", rows}};
}

nlohmann::json scaling_json(const nlohmann::json& config, const ScalingResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : result.rows)
    rows.push_back({{"s", r.s},
                    {"median_error", number_or_null(r.median_error)},
                    {"median_rel_error", number_or_null(r.median_rel_error)},
                    {"failures", r.failures}});
  const auto opt = [](const std::optional<double>& v) {
    return v ? number_or_null(*v) : nlohmann::json(nullptr);
  };
  return {{"format_version", kFormatVersion},
          {"config", config},
          {"rows", rows},
          {"slope", opt(result.slope)},
          {"intercept", opt(result.intercept)},
          {"fit_rms", opt(result.fit_rms)},
          {"degenerate", result.degenerate}};
}

nlohmann::json recovery_json(const RecoveryResult& r) {
  std::vector<Index> support(r.support.begin(), r.support.end());
  return {{"support", support},
          {"iterations", r.iterations},
          {"matvecs", r.matvecs},
          {"halted_by", to_string(r.halted_by)},
          {"residual_norms", r.residual_norms}};
}

}  // namespace pursuit
