#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsspec/sampling.hpp"
#include "nsspec/spectral.hpp"
#include "nsspec/synthesis.hpp"
#include "nsspec/types.hpp"

namespace nsspec {

/// Everything an end-to-end run needs; loadable from a JSON document whose
/// values individual CLI flags may override. The schema is documented in the
/// README.
struct ExperimentConfig {
  int K = 500;
  int P = 2000;
  std::vector<double> ar = {0.8, 0.1};
  std::vector<double> ma = {1.0};
  std::string profile = "paper";  // paper | const:<v> | file:<path>
  std::string temporal = "iid";   // iid | ar1:<rho>
  std::vector<int> windows = {400, 425, 450, 475, 500};
  double fraction = 0.9;
  std::uint64_t seed = 20240501;
  std::string out_dir = "out";
  int threads = 1;
  int warmup = 0;
  // Sampling-rate multiple of the Nyquist rate 2B used by the fig2 pipeline;
  // 2.0 decimates at twice the Nyquist rate.
  double nyquist_margin = 2.0;
  // Feed the closed-form PSD (instead of the estimated one) to the bandwidth
  // computation in fig2.
  bool bandwidth_from_theory = false;

  VarianceProfile resolve_profile() const;
  TemporalModel resolve_temporal() const;

  static ExperimentConfig from_json_file(const std::string& path);
  std::string to_json() const;
};

struct Fig1Result {
  std::vector<ConvergenceRow> distances;
  std::vector<std::string> files_written;
};

/// Per-window PSD estimates, the lag-average reference spectrum, and the
/// sup-norm distance table, all written as CSV under config.out_dir.
Fig1Result run_fig1(const ExperimentConfig& config);

struct Fig2Result {
  double bandwidth_B = 0.0;
  int decimation_M = 1;
  double mse_pct = 0.0;
  double out_of_band_energy_fraction = 0.0;  // PSD mass beyond pi/M
  double predicted_mse_pct = 0.0;            // alias-accounted: 2 * out-of-band
  double residual_beyond_B = 0.0;            // PSD mass beyond B (<= 1 - fraction)
  std::vector<std::string> files_written;
};

/// Theoretical-vs-estimated lag averages and PSDs, one realization with its
/// reconstruction, and a summary JSON, all written under config.out_dir.
Fig2Result run_fig2(const ExperimentConfig& config);

struct BenchRow {
  int P = 0;
  int T = 0;
  double psd_seconds = 0.0;      // ensemble-PSD pipeline (per-realization FFTs)
  double genpsd_seconds = 0.0;   // autocorrelation matrix + 2-D transform
  double ratio = 0.0;
};

/// Wall-clock comparison of the two spectral pipelines (median of `reps`
/// repetitions after one warm-up run per size).
std::vector<BenchRow> run_bench(const std::vector<std::pair<int, int>>& sizes,
                                std::uint64_t seed, int reps = 5, int threads = 1);

}  // namespace nsspec
