// End-to-end checks of the command-line surface: subcommands, file formats,
// and the exit-code contract (0 ok, 1 input error, 2 invariant violation).

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#ifndef NSSPEC_CLI_PATH
#error "NSSPEC_CLI_PATH must point at the nsspec binary"
#endif

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("nsspec_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NSSPEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) {
  std::ifstream f(p);
  REQUIRE(f);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("synth/psd/bandwidth/subsample/reconstruct/mse pipeline") {
  TempDir tmp("pipe");
  const std::string ens = tmp.file("ens.csv");
  const std::string psd = tmp.file("psd.csv");
  const std::string plan = tmp.file("plan.json");
  const std::string sub = tmp.file("sub.csv");
  const std::string rec = tmp.file("rec.csv");

  CHECK(run_cli("synth --K 128 --P 50 --ar 0.8,0.1 --profile paper --temporal iid --seed 5 --out " +
                ens) == 0);
  CHECK(fs::exists(ens));
  CHECK(run_cli("psd --in " + ens + " --out " + psd) == 0);
  CHECK(run_cli("bandwidth --in " + psd + " --fraction 0.9 --nyquist-margin 2 --out " + plan) == 0);
  CHECK(run_cli("subsample --in " + ens + " --plan " + plan + " --out " + sub) == 0);
  // reconstruct picks the original length up from the K0 header field
  CHECK(run_cli("reconstruct --in " + sub + " --plan " + plan + " --out " + rec) == 0);
  CHECK(run_cli("mse --original " + ens + " --reconstructed " + rec + " --out " +
                tmp.file("mse.json")) == 0);
  CHECK(slurp(tmp.file("mse.json")).find("pooled_mse_pct") != std::string::npos);

  CHECK(run_cli("avg-acf --in " + ens + " --norm biased --out " + tmp.file("acf.csv")) == 0);
  CHECK(run_cli("gen-psd --in " + ens + " --grid 16 --out " + tmp.file("gen.csv")) == 0);
  CHECK(run_cli("verify-wk --in " + ens + " --windows 96,112,128 --out " + tmp.file("wk.csv")) ==
        0);
  CHECK(run_cli("check-assumptions --in " + ens + " --out " + tmp.file("as.json")) == 0);
  CHECK(slurp(tmp.file("as.json")).find("\"pass\": true") != std::string::npos);
}

TEST_CASE("experiment subcommands run from a config file") {
  TempDir tmp("exp");
  const std::string cfg = tmp.file("config.json");
  {
    std::ofstream f(cfg);
    f << R"({"K":64,"P":60,"windows":[48,64],"seed":11,"out":")" << tmp.file("out")
      << R"(","threads":2})";
  }
  CHECK(run_cli("--config " + cfg + " experiment fig1") == 0);
  CHECK(fs::exists(tmp.file("out") + "/fig1_distances.csv"));
  CHECK(run_cli("--config " + cfg + " experiment fig2 --fraction 0.9") == 0);
  CHECK(fs::exists(tmp.file("out") + "/fig2_summary.json"));
  CHECK(run_cli("bench --sizes 1:8,1:16 --reps 1 --out " + tmp.file("bench.csv")) == 0);
  CHECK(slurp(tmp.file("bench.csv")).find("ratio") != std::string::npos);
}

TEST_CASE("exit codes: 1 for input errors, 2 for invariant violations") {
  TempDir tmp("exit");
  CHECK(run_cli("definitely-not-a-subcommand") == 1);
  CHECK(run_cli("psd --in " + tmp.file("missing.csv")) == 1);

  const std::string ens = tmp.file("e.csv");
  CHECK(run_cli("synth --K 32 --P 4 --seed 1 --out " + ens) == 0);
  // window longer than the record: input error
  CHECK(run_cli("psd --in " + ens + " --N 64 --out " + tmp.file("p.csv")) == 1);
  // non-finite sample: invariant violation
  const std::string bad = tmp.file("bad.csv");
  {
    std::ofstream f(bad);
    f << "# P=1 K=3 seed=0\n1,nan,3\n";
  }
  CHECK(run_cli("psd --in " + bad + " --out " + tmp.file("p2.csv")) == 2);
  // unstable feedback coefficients: input error
  CHECK(run_cli("synth --K 16 --P 2 --ar 1.5 --out " + tmp.file("x.csv")) == 1);
}

TEST_CASE("cli outputs are byte-identical for 1 vs 8 threads") {
  TempDir tmp("det");
  const std::string a = tmp.file("a.csv"), b = tmp.file("b.csv");
  CHECK(run_cli("--threads 1 synth --K 96 --P 40 --temporal ar1:0.5 --seed 9 --out " + a) == 0);
  CHECK(run_cli("--threads 8 synth --K 96 --P 40 --temporal ar1:0.5 --seed 9 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));

  const std::string pa = tmp.file("pa.csv"), pb = tmp.file("pb.csv");
  CHECK(run_cli("--threads 1 psd --in " + a + " --out " + pa) == 0);
  CHECK(run_cli("--threads 8 psd --in " + b + " --out " + pb) == 0);
  CHECK(slurp(pa) == slurp(pb));
}
