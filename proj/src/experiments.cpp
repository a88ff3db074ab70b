#include "nsspec/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>

#include <json.hpp>

#include "nsspec/errors.hpp"
#include "nsspec/io.hpp"
#include "nsspec/spectral.hpp"

namespace nsspec {

namespace {

using nlohmann::json;

double in_band_fraction(const Spectrum& s, double band) {
  double total = 0.0, in = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double v = std::max(s.values[i], 0.0);
    total += v;
    if (std::abs(s.omegas[i]) <= band + 1e-15) in += v;
  }
  return total > 0.0 ? in / total : 0.0;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

VarianceProfile ExperimentConfig::resolve_profile() const {
  if (profile == "paper") return step_variance_profile(K);
  if (profile.rfind("const:", 0) == 0) {
    const double v = std::stod(profile.substr(6));
    if (v < 0.0) throw InputError("constant profile value must be >= 0");
    return VarianceProfile(std::vector<double>(static_cast<std::size_t>(K), v));
  }
  if (profile.rfind("file:", 0) == 0) {
    std::vector<double> ar_unused, ma_unused, variance;
    io::read_filter_profile_json(profile.substr(5), ar_unused, ma_unused, variance);
    if (variance.empty()) throw InputError("profile file has no 'variance' array");
    if (static_cast<int>(variance.size()) != K)
      throw InputError("profile length " + std::to_string(variance.size()) +
                       " does not match K=" + std::to_string(K));
    return VarianceProfile(std::move(variance));
  }
  throw InputError("unknown profile: " + profile + " (want paper|const:<v>|file:<path>)");
}

TemporalModel ExperimentConfig::resolve_temporal() const {
  if (temporal == "iid") return TemporalModel::iid();
  if (temporal.rfind("ar1:", 0) == 0) return TemporalModel::ar1(std::stod(temporal.substr(4)));
  throw InputError("unknown temporal model: " + temporal + " (want iid|ar1:<rho>)");
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open config: " + path);
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid config JSON: ") + e.what());
  }
  ExperimentConfig c;
  c.K = j.value("K", c.K);
  c.P = j.value("P", c.P);
  c.ar = j.value("ar", c.ar);
  c.ma = j.value("ma", c.ma);
  c.profile = j.value("profile", c.profile);
  c.temporal = j.value("temporal", c.temporal);
  c.windows = j.value("windows", c.windows);
  c.fraction = j.value("fraction", c.fraction);
  c.seed = j.value("seed", c.seed);
  c.out_dir = j.value("out", c.out_dir);
  c.threads = j.value("threads", c.threads);
  c.warmup = j.value("warmup", c.warmup);
  c.nyquist_margin = j.value("nyquist_margin", c.nyquist_margin);
  c.bandwidth_from_theory = j.value("bandwidth_from_theory", c.bandwidth_from_theory);
  return c;
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["K"] = K;
  j["P"] = P;
  j["ar"] = ar;
  j["ma"] = ma;
  j["profile"] = profile;
  j["temporal"] = temporal;
  j["windows"] = windows;
  j["fraction"] = fraction;
  j["seed"] = seed;
  j["out"] = out_dir;
  j["threads"] = threads;
  j["warmup"] = warmup;
  j["nyquist_margin"] = nyquist_margin;
  j["bandwidth_from_theory"] = bandwidth_from_theory;
  return j.dump(2);
}

Fig1Result run_fig1(const ExperimentConfig& config) {
  if (config.windows.empty()) throw InputError("windows list must be non-empty");
  if (!std::is_sorted(config.windows.begin(), config.windows.end()))
    throw InputError("windows must be sorted ascending");
  for (int N : config.windows)
    if (N < 1 || N > config.K) throw InputError("window outside [1, K]");

  const LtiFilter filter = make_filter(config.ar, config.ma);
  const VarianceProfile profile = config.resolve_profile();
  const Ensemble ens = synthesize(profile, filter, config.P, config.resolve_temporal(),
                                  config.seed, config.warmup, config.threads);

  std::filesystem::create_directories(config.out_dir);
  Fig1Result result;

  // Reference: FT of the biased lag average over the largest window,
  // emitted on that window's grid and re-evaluated per window grid for the
  // distance table.
  const int n_max = config.windows.back();
  Ensemble head(ens.num_realizations, n_max, ens.seed);
  for (int p = 0; p < ens.num_realizations; ++p)
    std::copy(ens.row(p), ens.row(p) + n_max, head.row(p));
  const SquareMatrix R = estimate_autocorrelation(head, config.threads);
  const LagFunction ref_lag = averaged_autocorrelation(R, LagNormalization::biased);

  const Spectrum reference = ft_of_lag(ref_lag, centered_grid(n_max));
  {
    const std::string path = join_path(config.out_dir, "fig1_reference.csv");
    io::write_spectrum_csv(path, reference);
    result.files_written.push_back(path);
  }

  for (int N : config.windows) {
    const Spectrum psd = estimate_psd(ens, N, config.threads);
    const Spectrum ref_n = ft_of_lag(ref_lag, psd.omegas);
    double sup = 0.0;
    for (std::size_t i = 0; i < psd.values.size(); ++i)
      sup = std::max(sup, std::abs(psd.values[i] - ref_n.values[i]));
    result.distances.push_back({N, sup});

    const std::string path = join_path(config.out_dir, "fig1_psd_N" + std::to_string(N) + ".csv");
    io::write_spectrum_csv(path, psd);
    result.files_written.push_back(path);
  }

  {
    const std::string path = join_path(config.out_dir, "fig1_distances.csv");
    io::write_convergence_csv(path, result.distances);
    result.files_written.push_back(path);
  }
  return result;
}

Fig2Result run_fig2(const ExperimentConfig& config) {
  const LtiFilter filter = make_filter(config.ar, config.ma);
  const VarianceProfile profile = config.resolve_profile();
  const Ensemble ens = synthesize(profile, filter, config.P, config.resolve_temporal(),
                                  config.seed, config.warmup, config.threads);

  std::filesystem::create_directories(config.out_dir);
  Fig2Result result;

  const Spectrum psd_est = estimate_psd(ens, config.K, config.threads);
  const Spectrum psd_theory = theoretical_psd_ns1(filter, profile, psd_est.omegas);
  const Spectrum& psd_for_bandwidth = config.bandwidth_from_theory ? psd_theory : psd_est;

  const double B = fractional_bandwidth(psd_for_bandwidth, config.fraction);
  // Plan against margin*B: a sampling rate of at least `nyquist_margin`
  // times the Nyquist rate 2B.
  const double planned_band =
      std::min(B * config.nyquist_margin, std::numbers::pi * (1.0 - 1e-12));
  const SamplingPlan plan = make_plan(planned_band, config.fraction, std::max(1, config.K / 4));

  const Ensemble sub = subsample(ens, plan);
  const Ensemble recon = sinc_reconstruct(sub, plan, config.K, config.threads);
  const MseReport mse = reconstruction_mse(ens, recon);

  result.bandwidth_B = B;
  result.decimation_M = plan.decimation_M;
  result.mse_pct = mse.pooled_pct;
  const double retained = std::numbers::pi / plan.decimation_M;
  result.out_of_band_energy_fraction = 1.0 - in_band_fraction(psd_for_bandwidth, retained);
  // Subsampling both drops the out-of-band mass and folds an equal alias
  // image into the retained band, so the error estimate is twice the tail.
  result.predicted_mse_pct = 200.0 * result.out_of_band_energy_fraction;
  result.residual_beyond_B = 1.0 - in_band_fraction(psd_for_bandwidth, B);

  // (a) lag averages, (b) spectra, (c) one realization + reconstruction.
  const SquareMatrix R = estimate_autocorrelation(ens, config.threads);
  const LagFunction acf_est = averaged_autocorrelation(R, LagNormalization::unbiased);
  const LagFunction acf_theory = theoretical_avg_acf(filter, profile);

  const struct {
    std::string name;
    std::function<void(const std::string&)> write;
  } outputs[] = {
      {"fig2_acf_estimated.csv", [&](const std::string& p) { io::write_lag_csv(p, acf_est); }},
      {"fig2_acf_theory.csv", [&](const std::string& p) { io::write_lag_csv(p, acf_theory); }},
      {"fig2_psd_estimated.csv", [&](const std::string& p) { io::write_spectrum_csv(p, psd_est); }},
      {"fig2_psd_theory.csv", [&](const std::string& p) { io::write_spectrum_csv(p, psd_theory); }},
  };
  for (const auto& o : outputs) {
    const std::string path = join_path(config.out_dir, o.name);
    o.write(path);
    result.files_written.push_back(path);
  }

  {
    const std::string path = join_path(config.out_dir, "fig2_realization.csv");
    std::ofstream f(path);
    if (!f) throw InputError("cannot open for writing: " + path);
    f << "k,original,reconstructed\n";
    for (int k = 0; k < config.K; ++k)
      f << k << "," << io::format_double(ens.at(0, k)) << ","
        << io::format_double(recon.at(0, k)) << "\n";
    result.files_written.push_back(path);
  }

  {
    const std::string path = join_path(config.out_dir, "fig2_summary.json");
    json j;
    j["B"] = result.bandwidth_B;
    j["M"] = result.decimation_M;
    j["mse_pct"] = result.mse_pct;
    j["out_of_band_energy_fraction"] = result.out_of_band_energy_fraction;
    j["predicted_mse_pct"] = result.predicted_mse_pct;
    j["residual_beyond_B"] = result.residual_beyond_B;
    j["fraction"] = config.fraction;
    j["nyquist_margin"] = config.nyquist_margin;
    std::ofstream f(path);
    if (!f) throw InputError("cannot open for writing: " + path);
    f << j.dump(2) << "\n";
    result.files_written.push_back(path);
  }
  return result;
}

std::vector<BenchRow> run_bench(const std::vector<std::pair<int, int>>& sizes,
                                std::uint64_t seed, int reps, int threads) {
  using clock = std::chrono::steady_clock;
  auto time_once = [](const std::function<void()>& fn) {
    const auto t0 = clock::now();
    fn();
    return std::chrono::duration<double>(clock::now() - t0).count();
  };
  auto median_time = [&](const std::function<void()>& fn, int n) {
    fn();  // warm caches and tables
    std::vector<double> t;
    t.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t.push_back(time_once(fn));
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
  };

  std::vector<BenchRow> rows;
  for (const auto& [P, T] : sizes) {
    const VarianceProfile profile(std::vector<double>(static_cast<std::size_t>(T), 1.0));
    const Ensemble ens = generate_noise(profile, P, TemporalModel::iid(), seed, threads);
    const auto grid = centered_grid(T);

    BenchRow row;
    row.P = P;
    row.T = T;
    row.psd_seconds = median_time([&] { estimate_psd(ens, T, threads); }, reps);
    row.genpsd_seconds = median_time(
        [&] {
          const SquareMatrix R = estimate_autocorrelation(ens, threads);
          estimate_generalized_psd(R, grid, grid);
        },
        reps);
    row.ratio = row.genpsd_seconds / row.psd_seconds;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nsspec
