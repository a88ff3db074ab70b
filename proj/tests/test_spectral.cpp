#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "nsspec/errors.hpp"
#include "nsspec/spectral.hpp"
#include "nsspec/synthesis.hpp"
#include "oracles.hpp"

using namespace nsspec;

namespace {

Ensemble white_ensemble(int P, int K, std::uint64_t seed) {
  return generate_noise(VarianceProfile(std::vector<double>(static_cast<std::size_t>(K), 1.0)), P,
                        TemporalModel::iid(), seed);
}

}  // namespace

TEST_CASE("psd of the zero ensemble is zero and bins are never negative") {
  Ensemble zero(3, 16, 0);
  const Spectrum s = estimate_psd(zero, 16);
  for (double v : s.values) CHECK(v == 0.0);

  const Spectrum r = estimate_psd(white_ensemble(7, 33, 3), 33);
  for (double v : r.values) CHECK(v >= 0.0);
  CHECK_THROWS_AS(estimate_psd(zero, 17), WindowTooLong);
}

TEST_CASE("white-noise psd is flat at the noise variance") {
  const int P = 10000, N = 64;
  const Spectrum s = estimate_psd(white_ensemble(P, N, 1), N);
  const double tol = 3.0 / std::sqrt(static_cast<double>(P));
  for (double v : s.values) CHECK(std::abs(v - 1.0) <= tol);
}

TEST_CASE("psd matches the direct-DFT oracle") {
  for (int N : {8, 12, 16}) {
    const Ensemble e = white_ensemble(5, 16, 17);
    const Spectrum fast = estimate_psd(e, N);
    const Spectrum slow = oracles::psd_direct(e, N);
    for (int i = 0; i < N; ++i)
      CHECK(std::abs(fast.values[static_cast<std::size_t>(i)] -
                     slow.values[static_cast<std::size_t>(i)]) <= 1e-9);
  }
}

TEST_CASE("parseval: mean psd bin equals mean square sample") {
  const Ensemble e = white_ensemble(5, 37, 23);
  const Spectrum s = estimate_psd(e, 37);
  const double mean_bin =
      std::accumulate(s.values.begin(), s.values.end(), 0.0) / static_cast<double>(s.size());
  double mean_sq = 0.0;
  for (double v : e.data) mean_sq += v * v;
  mean_sq /= static_cast<double>(e.data.size());
  CHECK(mean_bin == doctest::Approx(mean_sq).epsilon(1e-9));
}

TEST_CASE("autocorrelation estimate: rank-1 case and oracle equivalence") {
  Ensemble one(1, 2, 0);
  one.at(0, 0) = 1.0;
  one.at(0, 1) = 2.0;
  const SquareMatrix R = estimate_autocorrelation(one);
  CHECK(R.at(0, 0) == 1.0);
  CHECK(R.at(0, 1) == 2.0);
  CHECK(R.at(1, 0) == 2.0);
  CHECK(R.at(1, 1) == 4.0);

  const Ensemble e = white_ensemble(41, 19, 29);
  const SquareMatrix fast = estimate_autocorrelation(e, 2);
  const SquareMatrix slow = oracles::autocorrelation_direct(e);
  for (int i = 0; i < 19; ++i)
    for (int j = 0; j < 19; ++j) CHECK(std::abs(fast.at(i, j) - slow.at(i, j)) <= 1e-12);
}

TEST_CASE("white-noise autocorrelation is near identity") {
  const int P = 100000, K = 8;
  const SquareMatrix R = estimate_autocorrelation(white_ensemble(P, K, 37));
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      if (i == j)
        CHECK(std::abs(R.at(i, j) - 1.0) <= 3.0 * std::sqrt(2.0 / P));
      else
        CHECK(std::abs(R.at(i, j)) <= 3.0 / std::sqrt(static_cast<double>(P)));
    }
  }
}

TEST_CASE("lag averaging: identity matrix and oracle equivalence") {
  SquareMatrix eye(4);
  for (int i = 0; i < 4; ++i) eye.at(i, i) = 1.0;
  const LagFunction lag = averaged_autocorrelation(eye);
  CHECK(lag.at(0) == doctest::Approx(1.0));
  for (int tau = 1; tau <= 3; ++tau) {
    CHECK(lag.at(tau) == 0.0);
    CHECK(lag.at(-tau) == 0.0);
  }

  const SquareMatrix R = estimate_autocorrelation(white_ensemble(11, 9, 37));
  for (bool biased : {false, true}) {
    const auto norm = biased ? LagNormalization::biased : LagNormalization::unbiased;
    const LagFunction a = averaged_autocorrelation(R, norm);
    const LagFunction b = oracles::averaged_acf_direct(R, biased);
    for (int tau = -8; tau <= 8; ++tau) CHECK(std::abs(a.at(tau) - b.at(tau)) <= 1e-12);
    CHECK(a.asymmetry() == 0.0);
  }
}

TEST_CASE("constant profile reduces the lag average to the classical stationary estimator") {
  const int P = 2000, K = 64;
  const LtiFilter f = make_filter({0.8, 0.1});
  const VarianceProfile constant(std::vector<double>(K, 0.5));
  const Ensemble x = apply_filter(generate_noise(constant, P, TemporalModel::iid(), 41), f);
  const SquareMatrix R = estimate_autocorrelation(x);
  const LagFunction avg = averaged_autocorrelation(R, LagNormalization::unbiased);

  // Classical stationary estimator: mean over t of the lag product, same
  // normalization; identical by construction for any profile.
  const LagFunction classical = oracles::averaged_acf_direct(R, false);
  for (int tau = -(K - 1); tau <= K - 1; ++tau)
    CHECK(std::abs(avg.at(tau) - classical.at(tau)) <= 1e-12);

  // And it converges to variance * tap autocorrelation away from the edges.
  const LagFunction theory = theoretical_avg_acf(f, constant);
  for (int tau : {0, 1, 2, 5}) {
    const double se = 3.0 * theory.at(0) * std::sqrt(2.0 / P);
    CHECK(std::abs(avg.at(tau) - theory.at(tau)) <= se + 0.05 * std::abs(theory.at(tau)));
  }
}

TEST_CASE("step-profile lag average approaches the closed form") {
  const int K = 400, P = 3000;
  const LtiFilter f = make_filter({0.8, 0.1});
  const VarianceProfile profile = step_variance_profile(K);
  const Ensemble x = apply_filter(generate_noise(profile, P, TemporalModel::iid(), 63), f);
  const LagFunction est =
      averaged_autocorrelation(estimate_autocorrelation(x), LagNormalization::unbiased);
  const LagFunction theory = theoretical_avg_acf(f, profile);
  // Tolerance covers Monte-Carlo noise plus the startup-transient deficit.
  for (int tau : {0, 1, 2, 3, 5, 10})
    CHECK(std::abs(est.at(tau) - theory.at(tau)) <= 0.05 * theory.at(0));
}

TEST_CASE("ft_of_lag: delta, windowed cosine, oracle, asymmetry, clipping") {
  LagFunction delta(4);
  delta.at(0) = 1.0;
  const auto grid = centered_grid(16);
  const Spectrum flat = ft_of_lag(delta, grid);
  for (double v : flat.values) CHECK(v == doctest::Approx(1.0));

  const double w0 = 2.0 * std::numbers::pi * 8.0 / 64.0;
  LagFunction cosine(31);
  for (int tau = -31; tau <= 31; ++tau) cosine.at(tau) = std::cos(w0 * tau);
  const auto grid64 = centered_grid(64);
  const Spectrum peaks = ft_of_lag(cosine, grid64);
  const auto it = std::max_element(peaks.values.begin(), peaks.values.end());
  CHECK(std::abs(std::abs(grid64[static_cast<std::size_t>(it - peaks.values.begin())]) - w0) <=
        1e-12);

  const Spectrum ref = oracles::ft_of_lag_direct(cosine, grid64);
  for (std::size_t i = 0; i < ref.values.size(); ++i) {
    // Oracle has no clipping; compare where the reference is not tiny-negative.
    if (ref.values[i] >= 0.0) CHECK(std::abs(peaks.values[i] - ref.values[i]) <= 1e-9);
  }

  LagFunction bad(2);
  bad.at(1) = 1.0;
  bad.at(-1) = 0.0;
  CHECK_THROWS_AS(ft_of_lag(bad, grid), AsymmetricLag);

  LagFunction ridge(1);
  ridge.at(1) = ridge.at(-1) = 1.0;  // transform 2cos(w): negative half-line
  int clipped = 0;
  const Spectrum clippy = ft_of_lag(ridge, grid, &clipped);
  CHECK(clipped > 0);
  double peak = *std::max_element(clippy.values.begin(), clippy.values.end());
  for (double v : clippy.values) CHECK(v >= -1e-9 * peak - 1e-300);
}

TEST_CASE("max-abs autocorrelation: identity and oracle") {
  SquareMatrix eye(5);
  for (int i = 0; i < 5; ++i) eye.at(i, i) = 1.0;
  const LagFunction m = max_abs_autocorrelation(eye);
  CHECK(m.at(0) == 1.0);
  for (int tau = 1; tau <= 4; ++tau) CHECK(m.at(tau) == 0.0);

  const SquareMatrix R = estimate_autocorrelation(white_ensemble(7, 12, 43));
  const LagFunction a = max_abs_autocorrelation(R);
  const LagFunction b = oracles::max_abs_acf_direct(R);
  for (int tau = -11; tau <= 11; ++tau) CHECK(a.at(tau) == b.at(tau));
}

TEST_CASE("assumption diagnostics") {
  SquareMatrix zero(4);
  const AssumptionReport ok = check_assumptions(zero);
  CHECK(ok.c_hat == 0.0);
  CHECK(ok.rxm_sum == 0.0);
  CHECK(ok.pass);

  SquareMatrix bad(3);
  bad.at(1, 2) = std::nan("");
  const AssumptionReport nan_rep = check_assumptions(bad);
  CHECK_FALSE(nan_rep.pass);
  CHECK(nan_rep.has_nan);
  CHECK(nan_rep.nan_t1 == 1);
  CHECK(nan_rep.nan_t2 == 2);

  // Filtered-noise bound: c_hat <= max variance * tap energy.
  const LtiFilter f = make_filter({0.8, 0.1});
  const VarianceProfile profile = step_variance_profile(96);
  const Ensemble x = apply_filter(generate_noise(profile, 4000, TemporalModel::iid(), 47), f);
  const AssumptionReport rep = check_assumptions(estimate_autocorrelation(x));
  CHECK(rep.pass);
  const double bound = profile.max_variance() * f.impulse_energy();
  CHECK(rep.c_hat <= bound * (1.0 + 4.0 * std::sqrt(2.0 / 4000.0)));
}

TEST_CASE("closed-form lag average and psd") {
  const VarianceProfile p3 = step_variance_profile(3);
  const LtiFilter id = make_filter({}, {1.0});
  const LagFunction d = theoretical_avg_acf(id, p3);
  CHECK(d.max_lag == 0);
  CHECK(d.at(0) == doctest::Approx(0.4));

  const LtiFilter f = make_filter({0.8, 0.1});
  const LagFunction acf = theoretical_avg_acf(f, p3);
  CHECK(acf.at(0) == doctest::Approx(0.4 * f.impulse_energy()));
  const LagFunction ref = oracles::acf_of_taps_direct(f.impulse_response, 0.4);
  for (int tau = -acf.max_lag; tau <= acf.max_lag; ++tau)
    CHECK(std::abs(acf.at(tau) - ref.at(tau)) <= 1e-12);

  const auto grid = centered_grid(128);
  const Spectrum th = theoretical_psd_ns1(f, p3, grid);
  CHECK(th.values[64] == doctest::Approx(40.0));  // omega = 0 bin

  const Spectrum flat = theoretical_psd_ns1(id, p3, grid);
  for (double v : flat.values) CHECK(v == doctest::Approx(0.4));

  // Internal consistency: transform of the closed-form lag average.
  const Spectrum via_lag = ft_of_lag(acf, grid);
  for (int i = 0; i < 128; ++i)
    CHECK(std::abs(via_lag.values[static_cast<std::size_t>(i)] -
                   th.values[static_cast<std::size_t>(i)]) <=
          1e-7 * th.values[static_cast<std::size_t>(i)] + 1e-12);
}

TEST_CASE("generalized psd: white noise diagonal, zero, oracle, both paths") {
  // Unit white noise: K(u,u) equals the signal length on the diagonal.
  const int K = 12;
  SquareMatrix eye(K);
  for (int i = 0; i < K; ++i) eye.at(i, i) = 1.0;
  const auto grid = centered_grid(K);
  const BiSpectrum fftpath = estimate_generalized_psd(eye, grid, grid);
  for (int i = 0; i < K; ++i)
    CHECK(std::abs(fftpath.at(i, i) - std::complex<double>(K, 0.0)) <= 1e-9);

  SquareMatrix zero(6);
  const BiSpectrum z = estimate_generalized_psd(zero, centered_grid(6), centered_grid(6));
  for (const auto& v : z.values) CHECK(std::abs(v) == 0.0);

  const SquareMatrix R = estimate_autocorrelation(white_ensemble(6, 10, 53));
  const auto g10 = centered_grid(10);
  const BiSpectrum a = estimate_generalized_psd(R, g10, g10);
  const BiSpectrum b = oracles::generalized_psd_direct(R, g10, g10);
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-9);

  // Direct path on a non-DFT grid agrees with the oracle too.
  std::vector<double> odd_grid = {-2.0, -0.3, 0.0, 0.7, 1.9};
  const BiSpectrum c = estimate_generalized_psd(R, odd_grid, odd_grid);
  const BiSpectrum d = oracles::generalized_psd_direct(R, odd_grid, odd_grid);
  for (std::size_t i = 0; i < c.values.size(); ++i) CHECK(std::abs(c.values[i] - d.values[i]) <= 1e-9);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("white-noise generalized psd from the profile") {
  const VarianceProfile profile = step_variance_profile(9);
  const auto grid = centered_grid(9);
  const BiSpectrum kw = white_noise_generalized_psd(profile, grid, grid);
  // Diagonal: sum of variances; off-diagonal: transform of the profile.
  const double total = profile.mean_variance() * 9.0;
  for (int i = 0; i < 9; ++i) CHECK(std::abs(kw.at(i, i) - total) <= 1e-12);
  SquareMatrix diag(9);
  for (int t = 0; t < 9; ++t) diag.at(t, t) = profile[t];
  const BiSpectrum ref = oracles::generalized_psd_direct(diag, grid, grid);
  for (std::size_t i = 0; i < kw.values.size(); ++i)
    CHECK(std::abs(kw.values[i] - ref.values[i]) <= 1e-9);
}

TEST_CASE("wk convergence table") {
  const LtiFilter f = make_filter({0.8, 0.1});
  const Ensemble x =
      apply_filter(generate_noise(step_variance_profile(64), 800, TemporalModel::iid(), 59), f);
  const auto rows = verify_wk_convergence(x, {48, 56, 64});
  REQUIRE(rows.size() == 3);
  // Exact identity at the largest window (both sides share the 64-window).
  CHECK(rows[2].sup_distance <= 1e-9);
  CHECK(rows[0].sup_distance > rows[2].sup_distance);

  CHECK_THROWS_AS(verify_wk_convergence(x, {48, 65}), WindowTooLong);
  CHECK_THROWS_AS(verify_wk_convergence(x, {64, 48}), InputError);
}

TEST_CASE("wk distances agree with an all-oracle recomputation") {
  const LtiFilter f = make_filter({0.8, 0.1});
  const Ensemble x =
      apply_filter(generate_noise(step_variance_profile(16), 6, TemporalModel::iid(), 67), f);
  const std::vector<int> windows = {12, 16};
  const auto rows = verify_wk_convergence(x, windows);

  const SquareMatrix R = oracles::autocorrelation_direct(x);
  const LagFunction ref_lag = oracles::averaged_acf_direct(R, /*biased=*/true);
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const Spectrum psd = oracles::psd_direct(x, windows[w]);
    const Spectrum ref = oracles::ft_of_lag_direct(ref_lag, psd.omegas);
    double sup = 0.0;
    for (std::size_t i = 0; i < psd.values.size(); ++i)
      sup = std::max(sup, std::abs(psd.values[i] - ref.values[i]));
    CHECK(std::abs(rows[w].sup_distance - sup) <= 1e-9);
  }
}

TEST_CASE("psd estimates are deterministic across thread counts") {
  const Ensemble e = white_ensemble(100, 50, 61);
  const Spectrum s1 = estimate_psd(e, 50, 1);
  const Spectrum s8 = estimate_psd(e, 50, 8);
  CHECK(s1.values == s8.values);

  const SquareMatrix r1 = estimate_autocorrelation(e, 1);
  const SquareMatrix r8 = estimate_autocorrelation(e, 8);
  CHECK(r1.m == r8.m);
}
