#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "nsspec/errors.hpp"
#include "nsspec/io.hpp"
#include "nsspec/synthesis.hpp"

using namespace nsspec;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("nsspec_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("ensemble csv round-trips bit-exactly, with subsampling metadata") {
  TempDir tmp;
  Ensemble e = generate_noise(step_variance_profile(17), 4, TemporalModel::iid(), 321);
  const std::string path = tmp.file("e.csv");
  io::write_ensemble_csv(path, e);
  const Ensemble back = io::read_ensemble_csv(path);
  CHECK(back.num_realizations == 4);
  CHECK(back.num_samples == 17);
  CHECK(back.seed == 321);
  CHECK(back.data == e.data);

  e.decimation = 3;
  e.source_length = 51;
  io::write_ensemble_csv(path, e);
  const Ensemble sub = io::read_ensemble_csv(path);
  CHECK(sub.decimation == 3);
  CHECK(sub.source_length == 51);
}

TEST_CASE("ensemble csv rejects malformed input") {
  TempDir tmp;
  const std::string path = tmp.file("bad.csv");
  {
    std::ofstream f(path);
    f << "1,2,3\n";
  }
  CHECK_THROWS_AS(io::read_ensemble_csv(path), InputError);
  {
    std::ofstream f(path);
    f << "# P=2 K=3 seed=0\n1,2,3\n";
  }
  CHECK_THROWS_AS(io::read_ensemble_csv(path), InputError);  // truncated
  {
    std::ofstream f(path);
    f << "# P=1 K=3 seed=0\n1,nan,3\n";
  }
  CHECK_THROWS_AS(io::read_ensemble_csv(path), InvariantError);  // non-finite sample
  CHECK_THROWS_AS(io::read_ensemble_csv(tmp.file("missing.csv")), InputError);
}

TEST_CASE("spectrum csv round-trip and write-time invariant check") {
  TempDir tmp;
  Spectrum s;
  s.omegas = centered_grid(8);
  s.values = {0.1, 0.2, 0.4, 0.9, 1.0, 0.9, 0.4, 0.2};
  const std::string path = tmp.file("s.csv");
  io::write_spectrum_csv(path, s);
  const Spectrum back = io::read_spectrum_csv(path);
  CHECK(back.omegas == s.omegas);
  CHECK(back.values == s.values);

  Spectrum bad = s;
  bad.values[1] = -0.5;  // far below -eps_num
  CHECK_THROWS_AS(io::write_spectrum_csv(tmp.file("bad.csv"), bad), InvariantError);
  Spectrum lopsided = s;
  lopsided.values[2] = 0.8;  // breaks mirror symmetry
  CHECK_THROWS_AS(io::write_spectrum_csv(tmp.file("lop.csv"), lopsided), InvariantError);
}

TEST_CASE("lag csv round-trip") {
  TempDir tmp;
  LagFunction lag(3);
  for (int tau = -3; tau <= 3; ++tau) lag.at(tau) = 0.25 * tau * tau;
  const std::string path = tmp.file("lag.csv");
  io::write_lag_csv(path, lag);
  const LagFunction back = io::read_lag_csv(path);
  CHECK(back.max_lag == 3);
  CHECK(back.values == lag.values);
}

TEST_CASE("plan json uses the contract keys") {
  TempDir tmp;
  SamplingPlan plan;
  plan.bandwidth_B = 0.679;
  plan.decimation_M = 4;
  plan.fraction = 0.9;
  const std::string path = tmp.file("plan.json");
  io::write_plan_json(path, plan);

  std::ifstream f(path);
  std::string body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(body.find("\"B\"") != std::string::npos);
  CHECK(body.find("\"M\"") != std::string::npos);
  CHECK(body.find("\"fraction\"") != std::string::npos);

  const SamplingPlan back = io::read_plan_json(path);
  CHECK(back.bandwidth_B == plan.bandwidth_B);
  CHECK(back.decimation_M == plan.decimation_M);
  CHECK(back.fraction == plan.fraction);
}

TEST_CASE("filter/profile json uses the contract keys") {
  TempDir tmp;
  const std::string path = tmp.file("fp.json");
  io::write_filter_profile_json(path, {0.8, 0.1}, {1.0}, {1.0, 0.1, 0.1});
  std::vector<double> ar, ma, variance;
  io::read_filter_profile_json(path, ar, ma, variance);
  CHECK(ar == std::vector<double>{0.8, 0.1});
  CHECK(ma == std::vector<double>{1.0});
  CHECK(variance == std::vector<double>{1.0, 0.1, 0.1});
}
