#include "nsspec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nsspec/errors.hpp"
#include "nsspec/kernels.hpp"
#include "nsspec/parallel.hpp"

namespace nsspec {

namespace {

inline double sinc(double u) {
  if (u == 0.0) return 1.0;
  const double pu = std::numbers::pi * u;
  return std::sin(pu) / pu;
}

}  // namespace

double fractional_bandwidth(const Spectrum& spectrum, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InputError("fraction must lie in (0, 1]");
  if (spectrum.omegas.empty()) throw EmptySpectrum("spectrum is empty");

  double peak = 0.0;
  for (double v : spectrum.values) peak = std::max(peak, v);
  const double eps_num = 1e-9 * std::max(peak, 0.0);
  double total = 0.0;
  for (double v : spectrum.values) {
    if (v < -eps_num) throw InputError("spectrum has a negative bin beyond tolerance");
    total += std::max(v, 0.0);
  }
  if (total <= 0.0) throw EmptySpectrum("spectrum has zero total mass");

  // Accumulate symmetric |omega|-shells outward from 0.
  std::vector<std::pair<double, double>> shells(spectrum.omegas.size());
  for (std::size_t i = 0; i < spectrum.omegas.size(); ++i)
    shells[i] = {std::abs(spectrum.omegas[i]), std::max(spectrum.values[i], 0.0)};
  std::sort(shells.begin(), shells.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const double target = fraction * total * (1.0 - 1e-14);
  double cum = 0.0;
  std::size_t i = 0;
  while (i < shells.size()) {
    const double b = shells[i].first;
    for (; i < shells.size() && shells[i].first == b; ++i) cum += shells[i].second;
    if (cum >= target) return b;
  }
  return shells.back().first;
}

SamplingPlan make_plan(double B, double fraction, int max_decimation) {
  if (!(B >= 0.0) || B >= std::numbers::pi)
    throw InputError("bandwidth must lie in [0, pi)");
  if (max_decimation < 1) throw InputError("max_decimation must be >= 1");

  SamplingPlan plan;
  plan.bandwidth_B = B;
  plan.fraction = fraction;
  if (B <= 0.0) {
    plan.decimation_M = max_decimation;
    return plan;
  }
  const double raw = std::numbers::pi / B;
  int M = raw >= static_cast<double>(max_decimation)
              ? max_decimation
              : static_cast<int>(std::floor(raw));
  while (M > 1 && !(std::numbers::pi / static_cast<double>(M) > B)) --M;
  plan.decimation_M = std::max(1, M);
  return plan;
}

Ensemble subsample(const Ensemble& ensemble, const SamplingPlan& plan) {
  const int M = plan.decimation_M;
  if (M < 1) throw InputError("plan decimation must be >= 1");
  const int K = ensemble.num_samples;
  const int Ks = (K + M - 1) / M;
  Ensemble out(ensemble.num_realizations, Ks, ensemble.seed);
  out.decimation = ensemble.decimation * M;
  out.source_length = ensemble.source_length > 0 ? ensemble.source_length : K;
  for (int p = 0; p < ensemble.num_realizations; ++p) {
    const double* src = ensemble.row(p);
    double* dst = out.row(p);
    for (int q = 0; q < Ks; ++q) dst[q] = src[q * M];
  }
  return out;
}

Ensemble sinc_reconstruct(const Ensemble& samples, const SamplingPlan& plan, int K, int threads) {
  const int M = plan.decimation_M;
  const int Ns = samples.num_samples;
  if (K < 1) throw InputError("original length must be >= 1");
  if ((K + M - 1) / M != Ns)
    throw InputError("plan inconsistent with samples: ceil(K/M) != sample count");

  Ensemble out(samples.num_realizations, K, samples.seed);
  out.decimation = 1;
  out.source_length = K;

  if (M == 1) {
    out.data = samples.data;
    return out;
  }

  // Per-phase weight tables: for t = q*M + r (0 < r < M),
  //   xhat[t] = sum_i s[i] * sinc((q - i) + r/M) = dot(s, table_r + Ns-1-q).
  std::vector<std::vector<double>> tables(static_cast<std::size_t>(M));
  for (int r = 1; r < M; ++r) {
    auto& tab = tables[static_cast<std::size_t>(r)];
    tab.resize(2 * static_cast<std::size_t>(Ns) - 1);
    for (int j = 0; j < 2 * Ns - 1; ++j)
      tab[static_cast<std::size_t>(j)] =
          sinc(static_cast<double>(Ns - 1 - j) + static_cast<double>(r) / M);
  }

  parallel_for(samples.num_realizations, threads, [&](std::int64_t p) {
    const double* s = samples.row(static_cast<int>(p));
    double* x = out.row(static_cast<int>(p));
    for (int t = 0; t < K; ++t) {
      const int q = t / M;
      const int r = t - q * M;
      if (r == 0) {
        x[t] = s[q];  // sinc hits integers: exact pass-through
      } else {
        const auto& tab = tables[static_cast<std::size_t>(r)];
        x[t] = kernels::dot(s, tab.data() + (Ns - 1 - q), static_cast<std::size_t>(Ns));
      }
    }
  });
  return out;
}

MseReport reconstruction_mse(const Ensemble& original, const Ensemble& reconstructed) {
  if (original.num_realizations != reconstructed.num_realizations ||
      original.num_samples != reconstructed.num_samples)
    throw InputError("ensembles must have the same shape");

  const int P = original.num_realizations;
  const auto n = static_cast<std::size_t>(original.num_samples);
  MseReport rep;
  rep.per_realization_pct.resize(static_cast<std::size_t>(P));
  double num = 0.0, den = 0.0;
  for (int p = 0; p < P; ++p) {
    const double np = kernels::sum_squared_diff(original.row(p), reconstructed.row(p), n);
    const double dp = kernels::sum_squares(original.row(p), n);
    num += np;
    den += dp;
    rep.per_realization_pct[static_cast<std::size_t>(p)] =
        dp > 0.0 ? 100.0 * np / dp
                 : (np == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  }
  if (den <= 0.0) throw ZeroSignal("original ensemble has zero energy");
  rep.pooled_pct = 100.0 * num / den;
  return rep;
}

}  // namespace nsspec
