// nsspec: spectral analysis and Nyquist-style subsampling of ensembles of
// nonstationary signals. See README.md for the file formats.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsspec/errors.hpp"
#include "nsspec/experiments.hpp"
#include "nsspec/io.hpp"
#include "nsspec/kernels.hpp"
#include "nsspec/sampling.hpp"
#include "nsspec/spectral.hpp"
#include "nsspec/synthesis.hpp"

namespace {

using namespace nsspec;

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    const std::string tok = csv.substr(pos, next - pos);
    if (!tok.empty()) out.push_back(std::stod(tok));
    pos = next + 1;
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  for (double v : parse_double_list(csv)) out.push_back(static_cast<int>(v));
  return out;
}

void warn_single_realization(const Ensemble& ens) {
  if (ens.num_realizations == 1)
    std::cerr << "warning: P=1 gives a rank-1 autocorrelation estimate\n";
}

struct CommonOpts {
  std::string config_path;
  bool seed_set = false;
  std::uint64_t seed = 0;
  bool threads_set = false;
  int threads = 1;
  bool out_set = false;
  std::string out_dir;

  ExperimentConfig load() const {
    ExperimentConfig c;
    if (!config_path.empty()) c = ExperimentConfig::from_json_file(config_path);
    if (seed_set) c.seed = seed;
    if (threads_set) c.threads = threads;
    if (out_set) c.out_dir = out_dir;
    return c;
  }
};

void add_config_overrides(CLI::App* cmd, ExperimentConfig& overrides,
                          std::vector<std::function<void(ExperimentConfig&)>>& appliers) {
  // Each flag records an applier so that only flags the user actually passed
  // override the config file.
  static std::string ar_csv, ma_csv, windows_csv;
  auto opt = [&appliers](CLI::Option* o, std::function<void(ExperimentConfig&)> fn) {
    o->each([&appliers, fn](const std::string&) { appliers.push_back(fn); });
  };
  opt(cmd->add_option("--K", overrides.K, "signal length"), [&](ExperimentConfig& c) { c.K = overrides.K; });
  opt(cmd->add_option("--P", overrides.P, "realization count"),
      [&](ExperimentConfig& c) { c.P = overrides.P; });
  opt(cmd->add_option("--ar", ar_csv, "feedback coefficients a1,a2,..."),
      [&](ExperimentConfig& c) { c.ar = parse_double_list(ar_csv); });
  opt(cmd->add_option("--ma", ma_csv, "feedforward coefficients b0,b1,..."),
      [&](ExperimentConfig& c) { c.ma = parse_double_list(ma_csv); });
  opt(cmd->add_option("--profile", overrides.profile, "paper | const:<v> | file:<path>"),
      [&](ExperimentConfig& c) { c.profile = overrides.profile; });
  opt(cmd->add_option("--temporal", overrides.temporal, "iid | ar1:<rho>"),
      [&](ExperimentConfig& c) { c.temporal = overrides.temporal; });
  opt(cmd->add_option("--windows", windows_csv, "window lengths N1,N2,..."),
      [&](ExperimentConfig& c) { c.windows = parse_int_list(windows_csv); });
  opt(cmd->add_option("--fraction", overrides.fraction, "bandwidth energy fraction"),
      [&](ExperimentConfig& c) { c.fraction = overrides.fraction; });
  opt(cmd->add_option("--warmup", overrides.warmup, "settle samples dropped before k=0"),
      [&](ExperimentConfig& c) { c.warmup = overrides.warmup; });
  opt(cmd->add_option("--nyquist-margin", overrides.nyquist_margin,
                      "sampling-rate multiple of the Nyquist rate 2B (default 2)"),
      [&](ExperimentConfig& c) { c.nyquist_margin = overrides.nyquist_margin; });
  opt(cmd->add_flag("--theory-bandwidth", overrides.bandwidth_from_theory,
                    "compute the bandwidth from the closed-form PSD"),
      [&](ExperimentConfig& c) { c.bandwidth_from_theory = overrides.bandwidth_from_theory; });
  opt(cmd->add_option("--seed", overrides.seed, "RNG seed"),
      [&](ExperimentConfig& c) { c.seed = overrides.seed; });
  opt(cmd->add_option("--threads", overrides.threads, "worker threads"),
      [&](ExperimentConfig& c) { c.threads = overrides.threads; });
  opt(cmd->add_option("--out", overrides.out_dir, "output directory"),
      [&](ExperimentConfig& c) { c.out_dir = overrides.out_dir; });
}

int run(int argc, char** argv) {
  CLI::App app{"spectral analysis and Nyquist-style subsampling of nonstationary ensembles"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--config", common.config_path, "experiment config JSON")->expected(1);
  app.add_option("--seed", common.seed, "RNG seed")->each([&](const std::string&) {
    common.seed_set = true;
  });
  app.add_option("--threads", common.threads, "worker threads")->each([&](const std::string&) {
    common.threads_set = true;
  });
  app.add_option("--out", common.out_dir, "output directory for experiments")
      ->each([&](const std::string&) { common.out_set = true; });
  std::string backend = "auto";
  app.add_option("--kernel-backend", backend, "auto | scalar | avx2 | neon");

  // ---- synth ----
  auto* synth = app.add_subcommand("synth", "synthesize a filtered-noise ensemble");
  struct {
    int K = 500, P = 2000, warmup = 0;
    std::string ar = "0.8,0.1", ma = "1", profile = "paper", temporal = "iid";
    std::uint64_t seed = 20240501;
    std::string out = "ensemble.csv";
  } sy;
  synth->add_option("--K", sy.K);
  synth->add_option("--P", sy.P);
  synth->add_option("--ar", sy.ar);
  synth->add_option("--ma", sy.ma);
  synth->add_option("--profile", sy.profile, "paper | const:<v> | file:<path>");
  synth->add_option("--temporal", sy.temporal, "iid | ar1:<rho>");
  synth->add_option("--seed", sy.seed);
  synth->add_option("--warmup", sy.warmup);
  synth->add_option("--out", sy.out, "output ensemble CSV");

  // ---- psd ----
  auto* psd = app.add_subcommand("psd", "ensemble PSD estimate");
  struct {
    std::string in, out = "psd.csv";
    int N = 0;
  } ps;
  psd->add_option("--in", ps.in)->required();
  psd->add_option("--N", ps.N, "window length (default: full length)");
  psd->add_option("--out", ps.out);

  // ---- avg-acf ----
  auto* avgacf = app.add_subcommand("avg-acf", "lag-averaged autocorrelation estimate");
  struct {
    std::string in, out = "avg_acf.csv", norm = "unbiased";
  } aa;
  avgacf->add_option("--in", aa.in)->required();
  avgacf->add_option("--norm", aa.norm, "biased | unbiased");
  avgacf->add_option("--out", aa.out);

  // ---- gen-psd ----
  auto* genpsd = app.add_subcommand("gen-psd", "two-dimensional generalized PSD estimate");
  struct {
    std::string in, out = "gen_psd.csv";
    int grid = 0;
  } gp;
  genpsd->add_option("--in", gp.in)->required();
  genpsd->add_option("--grid", gp.grid, "grid size (default: signal length)");
  genpsd->add_option("--out", gp.out);

  // ---- verify-wk ----
  auto* verify = app.add_subcommand("verify-wk", "PSD vs lag-average transform convergence");
  struct {
    std::string in, out = "wk_distances.csv", windows;
  } vw;
  verify->add_option("--in", vw.in)->required();
  verify->add_option("--windows", vw.windows, "window lengths N1,N2,...")->required();
  verify->add_option("--out", vw.out);

  // ---- check-assumptions ----
  auto* check = app.add_subcommand("check-assumptions", "boundedness/summability diagnostics");
  struct {
    std::string in, out = "assumptions.json";
  } ca;
  check->add_option("--in", ca.in)->required();
  check->add_option("--out", ca.out);

  // ---- bandwidth ----
  auto* bw = app.add_subcommand("bandwidth", "fractional bandwidth and sampling plan");
  struct {
    std::string in, out = "plan.json";
    double fraction = 0.9, margin = 1.0;
    int max_decimation = 0;
  } bo;
  bw->add_option("--in", bo.in, "spectrum CSV")->required();
  bw->add_option("--fraction", bo.fraction);
  bw->add_option("--nyquist-margin", bo.margin,
                 "sampling-rate multiple of the Nyquist rate 2B (default 1)");
  bw->add_option("--max-decimation", bo.max_decimation, "cap on M (default: bins/4)");
  bw->add_option("--out", bo.out, "plan JSON");

  // ---- subsample ----
  auto* subs = app.add_subcommand("subsample", "keep every M-th sample");
  struct {
    std::string in, plan, out = "subsampled.csv";
    int M = 0;
  } so;
  subs->add_option("--in", so.in)->required();
  subs->add_option("--plan", so.plan, "plan JSON (or use --M)");
  subs->add_option("--M", so.M, "decimation factor (overrides --plan)");
  subs->add_option("--out", so.out);

  // ---- reconstruct ----
  auto* rec = app.add_subcommand("reconstruct", "sinc reconstruction from subsamples");
  struct {
    std::string in, plan, out = "reconstructed.csv";
    int K = 0;
  } ro;
  rec->add_option("--in", ro.in, "subsampled ensemble CSV")->required();
  rec->add_option("--plan", ro.plan, "plan JSON")->required();
  rec->add_option("--K", ro.K, "original length (default: K0 from the input header)");
  rec->add_option("--out", ro.out);

  // ---- mse ----
  auto* mse = app.add_subcommand("mse", "normalized reconstruction error");
  struct {
    std::string original, reconstructed, out;
  } mo;
  mse->add_option("--original", mo.original)->required();
  mse->add_option("--reconstructed", mo.reconstructed)->required();
  mse->add_option("--out", mo.out, "optional JSON report");

  // ---- experiment ----
  auto* experiment = app.add_subcommand("experiment", "end-to-end experiment runner");
  experiment->require_subcommand(1);
  auto* fig1 = experiment->add_subcommand("fig1", "windowed-PSD convergence bundle");
  auto* fig2 = experiment->add_subcommand("fig2", "subsample/reconstruct bundle");
  ExperimentConfig overrides1, overrides2;
  std::vector<std::function<void(ExperimentConfig&)>> appliers1, appliers2;
  add_config_overrides(fig1, overrides1, appliers1);
  add_config_overrides(fig2, overrides2, appliers2);

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "PSD vs generalized-PSD pipeline timings");
  struct {
    std::string sizes = "64:256,64:512,64:1024";
    int reps = 5;
    std::string out;
  } be;
  bench->add_option("--sizes", be.sizes, "P:T pairs, e.g. 64:256,64:512");
  bench->add_option("--reps", be.reps, "repetitions per size (median)");
  bench->add_option("--out", be.out, "optional CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help/message
    return code == 0 ? 0 : 1;     // any parse failure is an input error
  }
  kernels::select_backend(backend.c_str());

  const int threads = common.threads_set ? common.threads : 1;

  if (*synth) {
    ExperimentConfig c;
    c.K = sy.K;
    c.P = sy.P;
    c.ar = parse_double_list(sy.ar);
    c.ma = parse_double_list(sy.ma);
    c.profile = sy.profile;
    c.temporal = sy.temporal;
    const std::uint64_t seed = common.seed_set ? common.seed : sy.seed;
    const LtiFilter filter = make_filter(c.ar, c.ma);
    const Ensemble ens = synthesize(c.resolve_profile(), filter, sy.P, c.resolve_temporal(),
                                    seed, sy.warmup, threads);
    io::write_ensemble_csv(sy.out, ens);
    std::cout << "wrote " << sy.out << " (P=" << ens.num_realizations
              << " K=" << ens.num_samples << ")\n";
  } else if (*psd) {
    const Ensemble ens = io::read_ensemble_csv(ps.in);
    const int N = ps.N > 0 ? ps.N : ens.num_samples;
    io::write_spectrum_csv(ps.out, estimate_psd(ens, N, threads));
    std::cout << "wrote " << ps.out << "\n";
  } else if (*avgacf) {
    const Ensemble ens = io::read_ensemble_csv(aa.in);
    warn_single_realization(ens);
    const auto norm =
        aa.norm == "biased" ? LagNormalization::biased : LagNormalization::unbiased;
    if (aa.norm != "biased" && aa.norm != "unbiased")
      throw InputError("--norm must be biased or unbiased");
    const SquareMatrix R = estimate_autocorrelation(ens, threads);
    io::write_lag_csv(aa.out, averaged_autocorrelation(R, norm));
    std::cout << "wrote " << aa.out << "\n";
  } else if (*genpsd) {
    const Ensemble ens = io::read_ensemble_csv(gp.in);
    warn_single_realization(ens);
    const int grid_n = gp.grid > 0 ? gp.grid : ens.num_samples;
    const SquareMatrix R = estimate_autocorrelation(ens, threads);
    io::write_bispectrum_csv(gp.out,
                             estimate_generalized_psd(R, centered_grid(grid_n), centered_grid(grid_n)));
    std::cout << "wrote " << gp.out << "\n";
  } else if (*verify) {
    const Ensemble ens = io::read_ensemble_csv(vw.in);
    const auto rows = verify_wk_convergence(ens, parse_int_list(vw.windows), threads);
    io::write_convergence_csv(vw.out, rows);
    for (const auto& r : rows)
      std::cout << "N=" << r.window << " sup_distance=" << io::format_double(r.sup_distance)
                << "\n";
    std::cout << "wrote " << vw.out << "\n";
  } else if (*check) {
    const Ensemble ens = io::read_ensemble_csv(ca.in);
    warn_single_realization(ens);
    const AssumptionReport rep = check_assumptions(estimate_autocorrelation(ens, threads));
    io::write_assumption_report_json(ca.out, rep);
    std::cout << (rep.pass ? "pass" : "FAIL") << " c_hat=" << io::format_double(rep.c_hat)
              << " rxm_sum=" << io::format_double(rep.rxm_sum) << "\n";
  } else if (*bw) {
    const Spectrum s = io::read_spectrum_csv(bo.in);
    const double B = fractional_bandwidth(s, bo.fraction);
    const int cap = bo.max_decimation > 0 ? bo.max_decimation
                                          : std::max(1, static_cast<int>(s.values.size()) / 4);
    const double planned = std::min(B * bo.margin, std::numbers::pi * (1.0 - 1e-12));
    const SamplingPlan plan = make_plan(planned, bo.fraction, cap);
    io::write_plan_json(bo.out, plan);
    std::cout << "B=" << io::format_double(B) << " M=" << plan.decimation_M << " wrote " << bo.out
              << "\n";
  } else if (*subs) {
    const Ensemble ens = io::read_ensemble_csv(so.in);
    SamplingPlan plan;
    if (so.M > 0) {
      plan.decimation_M = so.M;
    } else if (!so.plan.empty()) {
      plan = io::read_plan_json(so.plan);
    } else {
      throw InputError("subsample needs --plan or --M");
    }
    io::write_ensemble_csv(so.out, subsample(ens, plan));
    std::cout << "wrote " << so.out << "\n";
  } else if (*rec) {
    const Ensemble sub = io::read_ensemble_csv(ro.in);
    const SamplingPlan plan = io::read_plan_json(ro.plan);
    int K = ro.K;
    if (K <= 0 && sub.source_length > sub.num_samples) K = sub.source_length;
    if (K <= 0) throw InputError("reconstruct needs --K (no K0 in the input header)");
    io::write_ensemble_csv(ro.out, sinc_reconstruct(sub, plan, K, threads));
    std::cout << "wrote " << ro.out << "\n";
  } else if (*mse) {
    const Ensemble a = io::read_ensemble_csv(mo.original);
    const Ensemble b = io::read_ensemble_csv(mo.reconstructed);
    const MseReport rep = reconstruction_mse(a, b);
    std::cout << "pooled_mse_pct=" << io::format_double(rep.pooled_pct) << "\n";
    if (!mo.out.empty()) {
      std::ofstream f(mo.out);
      if (!f) throw InputError("cannot open for writing: " + mo.out);
      f << "{\n  \"pooled_mse_pct\": " << io::format_double(rep.pooled_pct)
        << ",\n  \"per_realization_pct\": [";
      for (std::size_t i = 0; i < rep.per_realization_pct.size(); ++i)
        f << (i ? "," : "") << io::format_double(rep.per_realization_pct[i]);
      f << "]\n}\n";
    }
  } else if (*fig1) {
    ExperimentConfig c = common.load();
    for (const auto& apply : appliers1) apply(c);
    const Fig1Result r = run_fig1(c);
    for (const auto& row : r.distances)
      std::cout << "N=" << row.window << " sup_distance=" << io::format_double(row.sup_distance)
                << "\n";
    std::cout << "wrote " << r.files_written.size() << " files under " << c.out_dir << "\n";
  } else if (*fig2) {
    ExperimentConfig c = common.load();
    for (const auto& apply : appliers2) apply(c);
    const Fig2Result r = run_fig2(c);
    std::cout << "B=" << io::format_double(r.bandwidth_B) << " M=" << r.decimation_M
              << " mse_pct=" << io::format_double(r.mse_pct)
              << " out_of_band=" << io::format_double(r.out_of_band_energy_fraction)
              << " predicted_mse_pct=" << io::format_double(r.predicted_mse_pct) << "\n";
    std::cout << "wrote " << r.files_written.size() << " files under " << c.out_dir << "\n";
  } else if (*bench) {
    std::vector<std::pair<int, int>> sizes;
    for (const auto& tok : [&] {
           std::vector<std::string> parts;
           std::size_t pos = 0;
           while (pos < be.sizes.size()) {
             auto next = be.sizes.find(',', pos);
             if (next == std::string::npos) next = be.sizes.size();
             parts.push_back(be.sizes.substr(pos, next - pos));
             pos = next + 1;
           }
           return parts;
         }()) {
      int p = 0, t = 0;
      if (std::sscanf(tok.c_str(), "%d:%d", &p, &t) != 2 || p < 1 || t < 1)
        throw InputError("bad --sizes entry: " + tok);
      sizes.emplace_back(p, t);
    }
    const std::uint64_t seed = common.seed_set ? common.seed : 20240501;
    const auto rows = run_bench(sizes, seed, be.reps, threads);
    std::cout << "P,T,psd_seconds,genpsd_seconds,ratio\n";
    for (const auto& r : rows)
      std::cout << r.P << "," << r.T << "," << io::format_double(r.psd_seconds) << ","
                << io::format_double(r.genpsd_seconds) << "," << io::format_double(r.ratio)
                << "\n";
    if (!be.out.empty()) {
      std::ofstream f(be.out);
      if (!f) throw InputError("cannot open for writing: " + be.out);
      f << "P,T,psd_seconds,genpsd_seconds,ratio\n";
      for (const auto& r : rows)
        f << r.P << "," << r.T << "," << io::format_double(r.psd_seconds) << ","
          << io::format_double(r.genpsd_seconds) << "," << io::format_double(r.ratio) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const nsspec::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const nsspec::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
