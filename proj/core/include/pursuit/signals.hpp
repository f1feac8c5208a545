#pragma once

#include <cstdint>
#include <optional>

#include <nlohmann/json_fwd.hpp>

#include "pursuit/sensing.hpp"
#include "pursuit/support.hpp"
#include "pursuit/types.hpp"

namespace pursuit {

enum class SignalKind { ExactSparse, Compressible, Arbitrary };

struct Signal {
  Vector values;
  SignalKind kind = SignalKind::Arbitrary;
  std::optional<SupportSet> true_support;
  std::optional<Index> sparsity;
  std::optional<double> p;
  std::optional<double> magnitude;  // R
  std::optional<std::uint64_t> seed;

  Index dim() const { return values.size(); }
};

/// s-sparse signal: uniform random support of size s, i.i.d. N(0,1) values
/// (a zero draw is redrawn, so |x|_0 == s exactly).
Signal gen_sparse(Index n, Index s, std::uint64_t seed);

/// p-compressible signal whose sorted magnitudes are exactly R * i^(-1/p),
/// with random signs and a random placement.
Signal gen_compressible(Index n, double p, double magnitude, std::uint64_t seed);

Signal make_arbitrary(Vector values);

/// Keeps the s largest magnitudes (ties: lower index first), zeroes the rest.
Vector head(const Vector& x, Index s);
Signal head(const Signal& x, Index s);

/// |x - head(x, s)|_1.
double tail_l1(const Vector& x, Index s);
double tail_l1(const Signal& x, Index s);

/// Checks |x|_(i) <= R * i^(-1/p) for every sorted index i, with relative slack.
bool satisfies_compressible_envelope(const Vector& x, double p, double magnitude,
                                     double rel_slack = 1e-12);

enum class NoiseMode { None, FixedNorm, GaussianSigma };

struct NoiseSpec {
  NoiseMode mode = NoiseMode::None;
  double level = 0.0;  // epsilon for FixedNorm, sigma for GaussianSigma
  std::uint64_t seed = 0;

  static NoiseSpec none() { return {}; }
  static NoiseSpec fixed_norm(double eps, std::uint64_t seed) {
    return {NoiseMode::FixedNorm, eps, seed};
  }
  static NoiseSpec gaussian(double sigma, std::uint64_t seed) {
    return {NoiseMode::GaussianSigma, sigma, seed};
  }
};

struct Measurement {
  Vector u;  // Phi x + e
  Vector e;
};

/// FixedNorm draws a Gaussian direction rescaled to |e|_2 = eps;
/// GaussianSigma draws e i.i.d. N(0, sigma^2).
Measurement measure(const SenseOperator& op, const Signal& x, const NoiseSpec& noise);

/// Regenerable recipe {kind, N, seed, s | p, R}.
struct SignalDescriptor {
  SignalKind kind = SignalKind::ExactSparse;
  Index n = 1;
  std::uint64_t seed = 0;
  Index s = 1;
  double p = 0.5;
  double magnitude = 1.0;

  Signal generate() const;
  // UsageError for Arbitrary signals, which carry no recipe.
  static SignalDescriptor of(const Signal& x);
};

void to_json(nlohmann::json& j, const SignalDescriptor& d);
void from_json(const nlohmann::json& j, SignalDescriptor& d);

}  // namespace pursuit
