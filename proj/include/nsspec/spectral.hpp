#pragma once

#include <string>
#include <vector>

#include "nsspec/filter.hpp"
#include "nsspec/types.hpp"

namespace nsspec {

/// Ensemble PSD estimate: mean over realizations of |DFT_N(x_p[0..N))|^2 / N
/// on the centered N-point grid. Every bin is nonnegative by construction.
/// Throws WindowTooLong if N exceeds the ensemble length.
Spectrum estimate_psd(const Ensemble& ensemble, int N, int threads = 1);

/// R(t1,t2) = mean over realizations of x_p[t1]*x_p[t2]; symmetric.
SquareMatrix estimate_autocorrelation(const Ensemble& ensemble, int threads = 1);

enum class LagNormalization {
  biased,    // divide by K: exact finite-window counterpart of the PSD
  unbiased,  // divide by K-|tau|: default estimator of the lag average
};

/// Mean of R over the anti-diagonal t1 - t2 = tau.
LagFunction averaged_autocorrelation(const SquareMatrix& R,
                                     LagNormalization norm = LagNormalization::unbiased);

/// Real Fourier transform sum_tau lag(tau)*cos(omega*tau) of a symmetric lag
/// function. Throws AsymmetricLag when the implied imaginary part exceeds
/// 1e-6 relative. Values below -eps_num (1e-9 * max) are clipped to -eps_num;
/// *clipped_bins (optional) receives the count.
Spectrum ft_of_lag(const LagFunction& lagfn, const std::vector<double>& omegas,
                   int* clipped_bins = nullptr);

/// Max over t of |R(t, t-tau)| per lag.
LagFunction max_abs_autocorrelation(const SquareMatrix& R);

struct AssumptionReport {
  double c_hat = 0.0;     // max_t R(t,t): the boundedness constant
  double rxm_sum = 0.0;   // sum over lags of max |R(t,t-tau)|: summability proxy
  bool bounded = false;
  bool summable = false;
  bool pass = false;
  bool has_nan = false;
  int nan_t1 = -1, nan_t2 = -1;  // first non-finite entry, if any
};

/// Diagnostics for the hypotheses behind the PSD/lag-average identity.
AssumptionReport check_assumptions(const SquareMatrix& R);

/// Closed form for filtered nonstationary white noise:
/// mean_variance * sum_k h[k]*h[k-tau] over the truncated support.
LagFunction theoretical_avg_acf(const LtiFilter& filter, const VarianceProfile& profile);

/// mean_variance * |H(omega)|^2 from the exact rational response.
Spectrum theoretical_psd_ns1(const LtiFilter& filter, const VarianceProfile& profile,
                             const std::vector<double>& omegas);

/// 2-D transform K(u,v) = sum_{t1,t2} R(t1,t2) exp(-j*(u*t1 - v*t2)).
/// Row/column FFTs when both grids are the centered DFT grid of R's size,
/// direct summation otherwise.
BiSpectrum estimate_generalized_psd(const SquareMatrix& R, const std::vector<double>& u_grid,
                                    const std::vector<double>& v_grid);

/// Generalized PSD of nonstationary white noise with the given profile:
/// K_w(u,v) = sum_t sigma^2[t] exp(-j*(u-v)*t).
BiSpectrum white_noise_generalized_psd(const VarianceProfile& profile,
                                       const std::vector<double>& u_grid,
                                       const std::vector<double>& v_grid);

struct ConvergenceRow {
  int window = 0;
  double sup_distance = 0.0;
};

/// For each window N: sup over the N-grid of |estimate_psd(N) - reference|
/// where the reference is the Fourier transform of the biased averaged
/// autocorrelation over the largest window. The N = max(windows) row is an
/// algebraic identity and lands at numerical zero.
std::vector<ConvergenceRow> verify_wk_convergence(const Ensemble& ensemble,
                                                  const std::vector<int>& windows,
                                                  int threads = 1);

}  // namespace nsspec
