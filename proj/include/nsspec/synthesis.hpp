#pragma once

#include <cstdint>

#include "nsspec/filter.hpp"
#include "nsspec/types.hpp"

namespace nsspec {

/// Coupling of realizations along the realization axis: independent draws, or
/// a stationary AR-1 chain across realizations (independently per sample
/// index) whose marginal variance still matches the profile.
struct TemporalModel {
  enum class Kind { iid, ar1 };
  Kind kind = Kind::iid;
  double rho = 0.0;  // only used for ar1; requires |rho| < 1

  static TemporalModel iid() { return {Kind::iid, 0.0}; }
  static TemporalModel ar1(double rho);
};

/// Step profile used by the reference experiments: first floor(K/3) samples
/// have variance 1.0, the rest 0.1. Requires K >= 3.
VarianceProfile step_variance_profile(int K);

/// Nonstationary white Gaussian noise: w_p[k] = sigma_w[k] * u_p[k] with u
/// standard normal, iid or AR-1 coupled across p. Deterministic for a fixed
/// seed under any thread count.
Ensemble generate_noise(const VarianceProfile& profile, int P, const TemporalModel& temporal,
                        std::uint64_t seed, int threads = 1);

/// Filters each realization independently by the exact recursion with zero
/// initial conditions; output length equals input length (transient kept).
Ensemble apply_filter(const Ensemble& noise, const LtiFilter& filter, int threads = 1);

/// generate_noise + apply_filter, optionally synthesizing `warmup` extra
/// leading samples (profile extended with its first value) that are dropped
/// after filtering, for callers who want the filter near steady state.
Ensemble synthesize(const VarianceProfile& profile, const LtiFilter& filter, int P,
                    const TemporalModel& temporal, std::uint64_t seed, int warmup = 0,
                    int threads = 1);

}  // namespace nsspec
