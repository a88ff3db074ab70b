#pragma once

#include <vector>

#include "nsspec/types.hpp"

namespace nsspec {

/// Uniform-subsampling plan: keep every decimation_M-th sample, valid while
/// the retained Nyquist frequency pi/M stays strictly above bandwidth_B.
struct SamplingPlan {
  double bandwidth_B = 0.0;  // radians/sample
  int decimation_M = 1;
  double fraction = 0.0;     // PSD energy fraction that defined B
};

/// Smallest grid frequency B with sum of PSD mass over |omega| <= B at least
/// fraction * total, accumulating symmetrically outward from omega = 0.
/// Throws EmptySpectrum when the total mass is zero. (fraction in (0, 1]).
double fractional_bandwidth(const Spectrum& spectrum, double fraction);

/// Largest integer M with pi/M > B (strict), capped at max_decimation so a
/// zero bandwidth cannot wipe out the signal. Requires 0 <= B < pi.
SamplingPlan make_plan(double B, double fraction, int max_decimation);

/// Keeps indices 0, M, 2M, ...; the result records M and the original length.
Ensemble subsample(const Ensemble& ensemble, const SamplingPlan& plan);

/// Truncated sinc-series interpolation back to length K:
///   xhat[t] = sum_n samples[n] * sinc((t - n*M)/M),  sinc(0) = 1.
/// Kept indices pass through exactly.
Ensemble sinc_reconstruct(const Ensemble& samples, const SamplingPlan& plan, int K,
                          int threads = 1);

struct MseReport {
  double pooled_pct = 0.0;                 // 100 * sum (x-xhat)^2 / sum x^2
  std::vector<double> per_realization_pct;
};

/// Normalized reconstruction error in percent, pooled over all realizations
/// and samples. Throws ZeroSignal when the reference energy is zero.
MseReport reconstruction_mse(const Ensemble& original, const Ensemble& reconstructed);

}  // namespace nsspec
