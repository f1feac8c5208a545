#include "pursuit/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "pursuit/rng.hpp"

namespace pursuit {

Signal gen_sparse(Index n, Index s, std::uint64_t seed) {
  if (n < 1) throw UsageError("gen_sparse: N must be >= 1");
  if (s < 1 || s > n)
    throw UsageError("gen_sparse: need 1 <= s <= N (got s=" + std::to_string(s) +
                     ", N=" + std::to_string(n) + ")");
  Rng rng(seed);
  auto support = SupportSet::from_indices(rng.sample_without_replacement(n, s), n);
  Signal x;
  x.values = Vector::Zero(n);
  for (Index j : support) {
    double g = 0.0;
    while (g == 0.0) g = rng.gaussian();
    x.values[j] = g;
  }
  x.kind = SignalKind::ExactSparse;
  x.true_support = std::move(support);
  x.sparsity = s;
  x.seed = seed;
  return x;
}

Signal gen_compressible(Index n, double p, double magnitude, std::uint64_t seed) {
  if (n < 1) throw UsageError("gen_compressible: N must be >= 1");
  if (!(p > 0.0) || !std::isfinite(p)) throw UsageError("gen_compressible: p must be positive");
  if (!(magnitude > 0.0) || !std::isfinite(magnitude))
    throw UsageError("gen_compressible: R must be positive");
  Rng rng(seed);
  const auto placement = rng.permutation(n);
  Signal x;
  x.values = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const double envelope = magnitude * std::pow(static_cast<double>(i + 1), -1.0 / p);
    x.values[placement[static_cast<std::size_t>(i)]] = rng.sign() * envelope;
  }
  x.kind = SignalKind::Compressible;
  x.p = p;
  x.magnitude = magnitude;
  x.seed = seed;
  return x;
}

Signal make_arbitrary(Vector values) {
  require_finite(values, "make_arbitrary");
  Signal x;
  x.values = std::move(values);
  x.kind = SignalKind::Arbitrary;
  return x;
}

Vector head(const Vector& x, Index s) {
  if (s < 0 || s > x.size()) throw UsageError("head: need 0 <= s <= N");
  const SupportSet keep = largest_entries(x, s);
  return keep.embed(keep.restrict(x), x.size());
}

Signal head(const Signal& x, Index s) {
  Signal out;
  out.values = head(x.values, s);
  out.kind = SignalKind::Arbitrary;
  out.true_support = SupportSet::of(out.values);
  return out;
}

double tail_l1(const Vector& x, Index s) { return (x - head(x, s)).lpNorm<1>(); }

double tail_l1(const Signal& x, Index s) { return tail_l1(x.values, s); }

bool satisfies_compressible_envelope(const Vector& x, double p, double magnitude,
                                     double rel_slack) {
  std::vector<double> mags(static_cast<std::size_t>(x.size()));
  for (Index j = 0; j < x.size(); ++j) mags[static_cast<std::size_t>(j)] = std::abs(x[j]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  for (std::size_t i = 0; i < mags.size(); ++i) {
    const double envelope = magnitude * std::pow(static_cast<double>(i + 1), -1.0 / p);
    if (mags[i] > envelope * (1.0 + rel_slack)) return false;
  }
  return true;
}

Measurement measure(const SenseOperator& op, const Signal& x, const NoiseSpec& noise) {
  if (x.dim() != op.cols()) throw UsageError("measure: signal length must equal N");
  if (!(noise.level >= 0.0) || !std::isfinite(noise.level))
    throw UsageError("measure: noise level must be finite and >= 0");
  Measurement out;
  out.e = Vector::Zero(op.rows());
  Rng rng(noise.seed);
  switch (noise.mode) {
    case NoiseMode::None:
      break;
    case NoiseMode::FixedNorm: {
      if (noise.level == 0.0) break;
      Vector dir(op.rows());
      do {
        for (Index i = 0; i < dir.size(); ++i) dir[i] = rng.gaussian();
      } while (dir.norm() == 0.0);
      out.e = dir * (noise.level / dir.norm());
      break;
    }
    case NoiseMode::GaussianSigma:
      for (Index i = 0; i < out.e.size(); ++i) out.e[i] = noise.level * rng.gaussian();
      break;
  }
  out.u = op.forward(x.values) + out.e;
  return out;
}

namespace {

std::string_view kind_name(SignalKind k) {
  switch (k) {
    case SignalKind::ExactSparse: return "sparse";
    case SignalKind::Compressible: return "compressible";
    case SignalKind::Arbitrary: return "arbitrary";
  }
  return "unknown";
}

}  // namespace

Signal SignalDescriptor::generate() const {
  switch (kind) {
    case SignalKind::ExactSparse: return gen_sparse(n, s, seed);
    case SignalKind::Compressible: return gen_compressible(n, p, magnitude, seed);
    case SignalKind::Arbitrary: break;
  }
  throw UsageError("SignalDescriptor: arbitrary signals cannot be regenerated");
}

SignalDescriptor SignalDescriptor::of(const Signal& x) {
  SignalDescriptor d;
  d.kind = x.kind;
  d.n = x.dim();
  switch (x.kind) {
    case SignalKind::ExactSparse:
      d.s = x.sparsity.value();
      d.seed = x.seed.value();
      return d;
    case SignalKind::Compressible:
      d.p = x.p.value();
      d.magnitude = x.magnitude.value();
      d.seed = x.seed.value();
      return d;
    case SignalKind::Arbitrary:
      break;
  }
  throw UsageError("SignalDescriptor: arbitrary signals carry no recipe");
}

void to_json(nlohmann::json& j, const SignalDescriptor& d) {
  j = nlohmann::json{{"kind", kind_name(d.kind)}, {"N", d.n}, {"seed", d.seed}};
  if (d.kind == SignalKind::ExactSparse) {
    j["s"] = d.s;
  } else if (d.kind == SignalKind::Compressible) {
    j["p"] = d.p;
    j["R"] = d.magnitude;
  } else {
    throw UsageError("SignalDescriptor: arbitrary signals cannot be serialized");
  }
}

void from_json(const nlohmann::json& j, SignalDescriptor& d) {
  const auto kind = j.at("kind").get<std::string>();
  d.n = j.at("N").get<Index>();
  d.seed = j.at("seed").get<std::uint64_t>();
  if (kind == "sparse") {
    d.kind = SignalKind::ExactSparse;
    d.s = j.at("s").get<Index>();
  } else if (kind == "compressible") {
    d.kind = SignalKind::Compressible;
    d.p = j.at("p").get<double>();
    d.magnitude = j.at("R").get<double>();
  } else {
    throw UsageError("SignalDescriptor: unknown kind '" + kind + "'");
  }
}

}  // namespace pursuit
