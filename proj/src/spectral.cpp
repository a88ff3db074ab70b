#include "nsspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nsspec/errors.hpp"
#include "nsspec/fft.hpp"
#include "nsspec/kernels.hpp"
#include "nsspec/parallel.hpp"

namespace nsspec {

namespace {

constexpr std::int64_t kRealizationBlock = 32;

/// Map centered-grid index to natural DFT bin.
inline int dft_bin(int centered_index, int n) { return (centered_index - n / 2 + n) % n; }

}  // namespace

Spectrum estimate_psd(const Ensemble& ensemble, int N, int threads) {
  const int P = ensemble.num_realizations;
  const int K = ensemble.num_samples;
  if (N < 1) throw InputError("window length must be >= 1");
  if (N > K) throw WindowTooLong("window " + std::to_string(N) + " exceeds K=" + std::to_string(K));

  const Fft plan(static_cast<std::size_t>(N));
  std::vector<double> total(static_cast<std::size_t>(N), 0.0);
  std::vector<std::vector<double>> slots(
      static_cast<std::size_t>(std::max(1, threads)),
      std::vector<double>(static_cast<std::size_t>(N), 0.0));

  blocked_reduce(
      P, kRealizationBlock, threads,
      [&](int slot, std::int64_t first, std::int64_t last) {
        auto& acc = slots[static_cast<std::size_t>(slot)];
        std::fill(acc.begin(), acc.end(), 0.0);
        std::vector<std::complex<double>> buf(static_cast<std::size_t>(N));
        for (std::int64_t p = first; p < last; ++p) {
          const double* row = ensemble.row(static_cast<int>(p));
          for (int k = 0; k < N; ++k) buf[static_cast<std::size_t>(k)] = {row[k], 0.0};
          plan.forward(buf.data());
          kernels::accumulate_abs2(acc.data(), buf.data(), static_cast<std::size_t>(N));
        }
      },
      [&](int slot) {
        const auto& acc = slots[static_cast<std::size_t>(slot)];
        for (int i = 0; i < N; ++i) total[static_cast<std::size_t>(i)] += acc[static_cast<std::size_t>(i)];
      });

  Spectrum out;
  out.omegas = centered_grid(N);
  out.values.resize(static_cast<std::size_t>(N));
  const double scale = 1.0 / (static_cast<double>(P) * static_cast<double>(N));
  for (int m = 0; m < N; ++m)
    out.values[static_cast<std::size_t>(m)] = total[static_cast<std::size_t>(dft_bin(m, N))] * scale;
  return out;
}

SquareMatrix estimate_autocorrelation(const Ensemble& ensemble, int threads) {
  const int P = ensemble.num_realizations;
  const int K = ensemble.num_samples;
  SquareMatrix R(K);
  std::vector<SquareMatrix> slots(static_cast<std::size_t>(std::max(1, threads)));

  blocked_reduce(
      P, kRealizationBlock, threads,
      [&](int slot, std::int64_t first, std::int64_t last) {
        auto& part = slots[static_cast<std::size_t>(slot)];
        if (part.n != K) part = SquareMatrix(K);
        std::fill(part.m.begin(), part.m.end(), 0.0);
        // Upper triangle of the rank-1 updates; mirrored once at the end.
        for (std::int64_t p = first; p < last; ++p) {
          const double* x = ensemble.row(static_cast<int>(p));
          for (int k1 = 0; k1 < K; ++k1)
            kernels::axpy(part.row(k1) + k1, x[k1], x + k1, static_cast<std::size_t>(K - k1));
        }
      },
      [&](int slot) {
        const auto& part = slots[static_cast<std::size_t>(slot)];
        for (std::size_t i = 0; i < R.m.size(); ++i) R.m[i] += part.m[i];
      });

  const double scale = 1.0 / static_cast<double>(P);
  for (int k1 = 0; k1 < K; ++k1) {
    for (int k2 = k1; k2 < K; ++k2) {
      const double v = R.at(k1, k2) * scale;
      R.at(k1, k2) = v;
      R.at(k2, k1) = v;
    }
  }
  return R;
}

LagFunction averaged_autocorrelation(const SquareMatrix& R, LagNormalization norm) {
  const int K = R.n;
  LagFunction lag(K - 1);
  for (int tau = 0; tau < K; ++tau) {
    double sum = 0.0;
    for (int t = tau; t < K; ++t) sum += R.at(t, t - tau);
    const double denom =
        (norm == LagNormalization::biased) ? static_cast<double>(K) : static_cast<double>(K - tau);
    lag.at(tau) = sum / denom;
    lag.at(-tau) = lag.at(tau);
  }
  return lag;
}

Spectrum ft_of_lag(const LagFunction& lagfn, const std::vector<double>& omegas,
                   int* clipped_bins) {
  const int max_lag = lagfn.max_lag;

  // Even/odd split: the even part carries the real transform, the odd part
  // is the implied imaginary part (must be negligible).
  std::vector<double> even(static_cast<std::size_t>(max_lag) + 1);
  std::vector<double> odd(static_cast<std::size_t>(max_lag) + 1, 0.0);
  even[0] = lagfn.at(0);
  bool any_odd = false;
  for (int tau = 1; tau <= max_lag; ++tau) {
    even[static_cast<std::size_t>(tau)] = lagfn.at(tau) + lagfn.at(-tau);
    odd[static_cast<std::size_t>(tau)] = lagfn.at(tau) - lagfn.at(-tau);
    if (odd[static_cast<std::size_t>(tau)] != 0.0) any_odd = true;
  }

  Spectrum out;
  out.omegas = omegas;
  out.values.resize(omegas.size());
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const double w = omegas[i];
    double re = even[0];
    for (int tau = 1; tau <= max_lag; ++tau)
      re += even[static_cast<std::size_t>(tau)] * std::cos(w * tau);
    out.values[i] = re;
    max_re = std::max(max_re, std::abs(re));
    if (any_odd) {
      double im = 0.0;
      for (int tau = 1; tau <= max_lag; ++tau)
        im -= odd[static_cast<std::size_t>(tau)] * std::sin(w * tau);
      max_im = std::max(max_im, std::abs(im));
    }
  }
  if (any_odd && max_im > 1e-6 * std::max(max_re, 1e-300))
    throw AsymmetricLag("lag function asymmetry leaves imaginary part " +
                        std::to_string(max_im) + " (max real " + std::to_string(max_re) + ")");

  double peak = 0.0;
  for (double v : out.values) peak = std::max(peak, v);
  const double eps_num = 1e-9 * std::max(peak, 0.0);
  int clipped = 0;
  for (double& v : out.values) {
    if (v < -eps_num) {
      v = -eps_num;
      ++clipped;
    }
  }
  if (clipped_bins) *clipped_bins = clipped;
  return out;
}

LagFunction max_abs_autocorrelation(const SquareMatrix& R) {
  const int K = R.n;
  LagFunction lag(K - 1);
  for (int tau = 0; tau < K; ++tau) {
    double worst = 0.0;
    for (int t = tau; t < K; ++t) worst = std::max(worst, std::abs(R.at(t, t - tau)));
    lag.at(tau) = worst;
    lag.at(-tau) = worst;
  }
  return lag;
}

AssumptionReport check_assumptions(const SquareMatrix& R) {
  AssumptionReport rep;
  const int K = R.n;
  for (int i = 0; i < K && !rep.has_nan; ++i) {
    for (int j = 0; j < K; ++j) {
      if (!std::isfinite(R.at(i, j))) {
        rep.has_nan = true;
        rep.nan_t1 = i;
        rep.nan_t2 = j;
        break;
      }
    }
  }
  for (int t = 0; t < K; ++t) rep.c_hat = std::max(rep.c_hat, R.at(t, t));
  const LagFunction rxm = max_abs_autocorrelation(R);
  rep.rxm_sum = 0.0;
  for (double v : rxm.values) rep.rxm_sum += v;
  rep.bounded = std::isfinite(rep.c_hat);
  rep.summable = std::isfinite(rep.rxm_sum);
  rep.pass = rep.bounded && rep.summable && !rep.has_nan;
  return rep;
}

LagFunction theoretical_avg_acf(const LtiFilter& filter, const VarianceProfile& profile) {
  const auto& h = filter.impulse_response;
  const int L = static_cast<int>(h.size());
  const double sbar = profile.mean_variance();
  LagFunction lag(L - 1);
  for (int tau = 0; tau < L; ++tau) {
    const double v =
        sbar * kernels::dot(h.data() + tau, h.data(), static_cast<std::size_t>(L - tau));
    lag.at(tau) = v;
    lag.at(-tau) = v;
  }
  return lag;
}

Spectrum theoretical_psd_ns1(const LtiFilter& filter, const VarianceProfile& profile,
                             const std::vector<double>& omegas) {
  const auto H = frequency_response(filter, omegas);
  Spectrum out;
  out.omegas = omegas;
  out.values.resize(omegas.size());
  const double sbar = profile.mean_variance();
  for (std::size_t i = 0; i < omegas.size(); ++i) out.values[i] = sbar * std::norm(H[i]);
  return out;
}

BiSpectrum estimate_generalized_psd(const SquareMatrix& R, const std::vector<double>& u_grid,
                                    const std::vector<double>& v_grid) {
  const int K = R.n;
  BiSpectrum out;
  out.u_grid = u_grid;
  out.v_grid = v_grid;
  out.values.assign(u_grid.size() * v_grid.size(), {0.0, 0.0});

  const bool fft_path = static_cast<int>(u_grid.size()) == K &&
                        static_cast<int>(v_grid.size()) == K && is_centered_dft_grid(u_grid) &&
                        is_centered_dft_grid(v_grid);
  if (fft_path) {
    // K(u,v) = sum_t1 e^{-j*u*t1} [ sum_t2 R(t1,t2) e^{+j*v*t2} ]:
    // inverse-sign FFT along rows, forward FFT along columns.
    const Fft plan(static_cast<std::size_t>(K));
    std::vector<std::complex<double>> work(static_cast<std::size_t>(K) *
                                           static_cast<std::size_t>(K));
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(K));
    for (int t1 = 0; t1 < K; ++t1) {
      const double* row = R.row(t1);
      for (int t2 = 0; t2 < K; ++t2) buf[static_cast<std::size_t>(t2)] = {row[t2], 0.0};
      plan.inverse_unscaled(buf.data());
      std::copy(buf.begin(), buf.end(),
                work.begin() + static_cast<std::size_t>(t1) * static_cast<std::size_t>(K));
    }
    for (int v = 0; v < K; ++v) {
      for (int t1 = 0; t1 < K; ++t1)
        buf[static_cast<std::size_t>(t1)] =
            work[static_cast<std::size_t>(t1) * static_cast<std::size_t>(K) + v];
      plan.forward(buf.data());
      for (int u = 0; u < K; ++u)
        work[static_cast<std::size_t>(u) * static_cast<std::size_t>(K) + v] =
            buf[static_cast<std::size_t>(u)];
    }
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j)
        out.at(i, j) = work[static_cast<std::size_t>(dft_bin(i, K)) * static_cast<std::size_t>(K) +
                            dft_bin(j, K)];
    return out;
  }

  // Direct path for arbitrary grids: inner transform over t2, then outer
  // over t1.
  const int Mu = static_cast<int>(u_grid.size());
  const int Mv = static_cast<int>(v_grid.size());
  std::vector<std::complex<double>> inner(static_cast<std::size_t>(K) *
                                          static_cast<std::size_t>(Mv));
  for (int t1 = 0; t1 < K; ++t1) {
    const double* row = R.row(t1);
    for (int j = 0; j < Mv; ++j) {
      std::complex<double> acc = 0.0;
      const std::complex<double> step = std::polar(1.0, v_grid[static_cast<std::size_t>(j)]);
      std::complex<double> ph = 1.0;
      for (int t2 = 0; t2 < K; ++t2) {
        acc += row[t2] * ph;
        ph *= step;
      }
      inner[static_cast<std::size_t>(t1) * static_cast<std::size_t>(Mv) + j] = acc;
    }
  }
  for (int i = 0; i < Mu; ++i) {
    const std::complex<double> step = std::polar(1.0, -u_grid[static_cast<std::size_t>(i)]);
    std::complex<double> ph = 1.0;
    std::vector<std::complex<double>> acc(static_cast<std::size_t>(Mv), {0.0, 0.0});
    for (int t1 = 0; t1 < K; ++t1) {
      const std::complex<double>* in_row = inner.data() + static_cast<std::size_t>(t1) * Mv;
      for (int j = 0; j < Mv; ++j) acc[static_cast<std::size_t>(j)] += ph * in_row[j];
      ph *= step;
    }
    for (int j = 0; j < Mv; ++j) out.at(i, j) = acc[static_cast<std::size_t>(j)];
  }
  return out;
}

BiSpectrum white_noise_generalized_psd(const VarianceProfile& profile,
                                       const std::vector<double>& u_grid,
                                       const std::vector<double>& v_grid) {
  const int K = profile.size();
  BiSpectrum out;
  out.u_grid = u_grid;
  out.v_grid = v_grid;
  out.values.assign(u_grid.size() * v_grid.size(), {0.0, 0.0});
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    for (std::size_t j = 0; j < v_grid.size(); ++j) {
      const std::complex<double> step = std::polar(1.0, -(u_grid[i] - v_grid[j]));
      std::complex<double> ph = 1.0;
      std::complex<double> acc = 0.0;
      for (int t = 0; t < K; ++t) {
        acc += profile[t] * ph;
        ph *= step;
      }
      out.at(static_cast<int>(i), static_cast<int>(j)) = acc;
    }
  }
  return out;
}

std::vector<ConvergenceRow> verify_wk_convergence(const Ensemble& ensemble,
                                                  const std::vector<int>& windows, int threads) {
  if (windows.empty()) throw InputError("windows list must be non-empty");
  if (!std::is_sorted(windows.begin(), windows.end()))
    throw InputError("windows must be sorted ascending");
  if (windows.front() < 1) throw InputError("windows must be >= 1");
  if (windows.back() > ensemble.num_samples)
    throw WindowTooLong("largest window exceeds ensemble length");

  const int n_max = windows.back();
  Ensemble head(ensemble.num_realizations, n_max, ensemble.seed);
  for (int p = 0; p < ensemble.num_realizations; ++p)
    std::copy(ensemble.row(p), ensemble.row(p) + n_max, head.row(p));

  const SquareMatrix R = estimate_autocorrelation(head, threads);
  const LagFunction reference_lag = averaged_autocorrelation(R, LagNormalization::biased);

  std::vector<ConvergenceRow> rows;
  rows.reserve(windows.size());
  for (int N : windows) {
    const Spectrum psd = estimate_psd(ensemble, N, threads);
    const Spectrum ref = ft_of_lag(reference_lag, psd.omegas);
    double sup = 0.0;
    for (std::size_t i = 0; i < psd.values.size(); ++i)
      sup = std::max(sup, std::abs(psd.values[i] - ref.values[i]));
    rows.push_back({N, sup});
  }
  return rows;
}

}  // namespace nsspec
