#include "nsspec/synthesis.hpp"

#include <cmath>

#include "nsspec/errors.hpp"
#include "nsspec/parallel.hpp"
#include "nsspec/rng.hpp"

namespace nsspec {

TemporalModel TemporalModel::ar1(double rho) {
  if (!(std::abs(rho) < 1.0)) throw InputError("ar1 coupling requires |rho| < 1");
  return {Kind::ar1, rho};
}

VarianceProfile step_variance_profile(int K) {
  if (K < 3) throw InputError("step profile requires K >= 3");
  std::vector<double> v(static_cast<std::size_t>(K), 0.1);
  for (int k = 0; k < K / 3; ++k) v[static_cast<std::size_t>(k)] = 1.0;
  return VarianceProfile(std::move(v));
}

Ensemble generate_noise(const VarianceProfile& profile, int P, const TemporalModel& temporal,
                        std::uint64_t seed, int threads) {
  if (P < 1) throw InputError("P must be >= 1");
  const int K = profile.size();
  Ensemble out(P, K, seed);

  std::vector<double> sigma(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) sigma[static_cast<std::size_t>(k)] = std::sqrt(profile[k]);

  if (temporal.kind == TemporalModel::Kind::iid) {
    parallel_for(P, threads, [&](std::int64_t p) {
      double* row = out.row(static_cast<int>(p));
      for (int k = 0; k < K; ++k)
        row[k] = sigma[static_cast<std::size_t>(k)] *
                 rng::gaussian(seed, static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(k));
    });
    return out;
  }

  // AR-1 chain across realizations, one independent chain per sample index.
  // Stationary initialization keeps the marginal variance at profile[k] for
  // every realization.
  const double rho = temporal.rho;
  const double innov = std::sqrt(1.0 - rho * rho);
  parallel_for(K, threads, [&](std::int64_t k) {
    const auto kk = static_cast<std::uint64_t>(k);
    double u = rng::gaussian(seed, 0, kk);
    out.at(0, static_cast<int>(k)) = sigma[static_cast<std::size_t>(k)] * u;
    for (int p = 1; p < P; ++p) {
      u = rho * u + innov * rng::gaussian(seed, static_cast<std::uint64_t>(p), kk);
      out.at(p, static_cast<int>(k)) = sigma[static_cast<std::size_t>(k)] * u;
    }
  });
  return out;
}

Ensemble apply_filter(const Ensemble& noise, const LtiFilter& filter, int threads) {
  const int P = noise.num_realizations;
  const int K = noise.num_samples;
  Ensemble out(P, K, noise.seed);
  out.decimation = noise.decimation;
  out.source_length = noise.source_length;

  const auto& ar = filter.ar;
  const auto& ma = filter.ma;
  parallel_for(P, threads, [&](std::int64_t p) {
    const double* w = noise.row(static_cast<int>(p));
    double* x = out.row(static_cast<int>(p));
    for (int k = 0; k < K; ++k) {
      double v = 0.0;
      for (std::size_t i = 0; i < ma.size(); ++i)
        if (k >= static_cast<int>(i)) v += ma[i] * w[k - static_cast<int>(i)];
      for (std::size_t j = 0; j < ar.size(); ++j)
        if (k > static_cast<int>(j)) v += ar[j] * x[k - static_cast<int>(j) - 1];
      x[k] = v;
    }
  });
  return out;
}

Ensemble synthesize(const VarianceProfile& profile, const LtiFilter& filter, int P,
                    const TemporalModel& temporal, std::uint64_t seed, int warmup, int threads) {
  if (warmup < 0) throw InputError("warmup must be >= 0");
  if (warmup == 0) {
    Ensemble noise = generate_noise(profile, P, temporal, seed, threads);
    return apply_filter(noise, filter, threads);
  }
  // Prepend `warmup` samples carrying the first profile value, filter, then
  // drop the prefix so the recursion is near steady state at k = 0.
  std::vector<double> extended(static_cast<std::size_t>(warmup), profile.values().front());
  extended.insert(extended.end(), profile.values().begin(), profile.values().end());
  Ensemble noise = generate_noise(VarianceProfile(std::move(extended)), P, temporal, seed, threads);
  Ensemble filtered = apply_filter(noise, filter, threads);

  const int K = profile.size();
  Ensemble out(P, K, seed);
  for (int p = 0; p < P; ++p) {
    const double* src = filtered.row(p) + warmup;
    std::copy(src, src + K, out.row(p));
  }
  return out;
}

}  // namespace nsspec
