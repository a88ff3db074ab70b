#include "nsspec/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nsspec/errors.hpp"

namespace nsspec::io {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open for writing: " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open for reading: " + path);
  return f;
}

json load_json(const std::string& path) {
  auto f = open_in(path);
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

std::vector<double> split_doubles(const std::string& line, const std::string& path) {
  std::vector<double> out;
  const char* s = line.c_str();
  char* end = nullptr;
  while (*s) {
    const double v = std::strtod(s, &end);
    if (end == s) throw InputError("bad numeric field in " + path + ": '" + line + "'");
    out.push_back(v);
    s = end;
    while (*s == ',' || *s == ' ' || *s == '\t' || *s == '\r') ++s;
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_ensemble_csv(const std::string& path, const Ensemble& ensemble) {
  ensemble.validate();
  auto f = open_out(path);
  f << "# P=" << ensemble.num_realizations << " K=" << ensemble.num_samples
    << " seed=" << ensemble.seed;
  if (ensemble.decimation > 1)
    f << " M=" << ensemble.decimation << " K0=" << ensemble.source_length;
  f << "\n";
  for (int p = 0; p < ensemble.num_realizations; ++p) {
    const double* row = ensemble.row(p);
    for (int k = 0; k < ensemble.num_samples; ++k) {
      if (k) f << ",";
      f << format_double(row[k]);
    }
    f << "\n";
  }
  if (!f) throw InputError("write failed: " + path);
}

Ensemble read_ensemble_csv(const std::string& path) {
  auto f = open_in(path);
  std::string header;
  if (!std::getline(f, header) || header.empty() || header[0] != '#')
    throw InputError("missing ensemble header in " + path);

  int P = 0, K = 0, M = 1, K0 = 0;
  std::uint64_t seed = 0;
  {
    std::istringstream hs(header.substr(1));
    std::string tok;
    while (hs >> tok) {
      if (std::sscanf(tok.c_str(), "P=%d", &P) == 1) continue;
      if (std::sscanf(tok.c_str(), "K0=%d", &K0) == 1) continue;
      if (std::sscanf(tok.c_str(), "K=%d", &K) == 1) continue;
      if (std::sscanf(tok.c_str(), "M=%d", &M) == 1) continue;
      if (std::sscanf(tok.c_str(), "seed=%" SCNu64, &seed) == 1) continue;
    }
  }
  if (P < 1 || K < 1) throw InputError("ensemble header lacks valid P/K in " + path);

  Ensemble out(P, K, seed);
  out.decimation = M;
  out.source_length = K0 > 0 ? K0 : K;
  std::string line;
  for (int p = 0; p < P; ++p) {
    if (!std::getline(f, line)) throw InputError("truncated ensemble file: " + path);
    const auto row = split_doubles(line, path);
    if (static_cast<int>(row.size()) != K)
      throw InputError("row " + std::to_string(p) + " has " + std::to_string(row.size()) +
                       " fields, expected " + std::to_string(K));
    std::copy(row.begin(), row.end(), out.row(p));
  }
  out.validate();
  return out;
}

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum) {
  spectrum.validate();
  auto f = open_out(path);
  f << "omega,value\n";
  for (std::size_t i = 0; i < spectrum.omegas.size(); ++i)
    f << format_double(spectrum.omegas[i]) << "," << format_double(spectrum.values[i]) << "\n";
  if (!f) throw InputError("write failed: " + path);
}

Spectrum read_spectrum_csv(const std::string& path) {
  auto f = open_in(path);
  std::string line;
  if (!std::getline(f, line)) throw InputError("empty spectrum file: " + path);
  Spectrum s;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto fields = split_doubles(line, path);
    if (fields.size() != 2) throw InputError("bad spectrum row in " + path);
    s.omegas.push_back(fields[0]);
    s.values.push_back(fields[1]);
  }
  return s;
}

void write_lag_csv(const std::string& path, const LagFunction& lagfn) {
  auto f = open_out(path);
  f << "lag,value\n";
  for (int tau = -lagfn.max_lag; tau <= lagfn.max_lag; ++tau)
    f << tau << "," << format_double(lagfn.at(tau)) << "\n";
  if (!f) throw InputError("write failed: " + path);
}

LagFunction read_lag_csv(const std::string& path) {
  auto f = open_in(path);
  std::string line;
  if (!std::getline(f, line)) throw InputError("empty lag file: " + path);
  std::vector<std::pair<int, double>> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto fields = split_doubles(line, path);
    if (fields.size() != 2) throw InputError("bad lag row in " + path);
    rows.emplace_back(static_cast<int>(fields[0]), fields[1]);
  }
  if (rows.empty()) throw InputError("lag file has no rows: " + path);
  int max_lag = 0;
  for (const auto& [tau, _] : rows) max_lag = std::max(max_lag, std::abs(tau));
  LagFunction lag(max_lag);
  for (const auto& [tau, v] : rows) lag.at(tau) = v;
  return lag;
}

void write_bispectrum_csv(const std::string& path, const BiSpectrum& bispectrum) {
  bispectrum.validate();
  auto f = open_out(path);
  f << "u,v,re,im\n";
  for (std::size_t i = 0; i < bispectrum.u_grid.size(); ++i) {
    for (std::size_t j = 0; j < bispectrum.v_grid.size(); ++j) {
      const auto z = bispectrum.at(static_cast<int>(i), static_cast<int>(j));
      f << format_double(bispectrum.u_grid[i]) << "," << format_double(bispectrum.v_grid[j]) << ","
        << format_double(z.real()) << "," << format_double(z.imag()) << "\n";
    }
  }
  if (!f) throw InputError("write failed: " + path);
}

void write_plan_json(const std::string& path, const SamplingPlan& plan) {
  json j;
  j["B"] = plan.bandwidth_B;
  j["M"] = plan.decimation_M;
  j["fraction"] = plan.fraction;
  auto f = open_out(path);
  f << j.dump(2) << "\n";
}

SamplingPlan read_plan_json(const std::string& path) {
  const json j = load_json(path);
  SamplingPlan plan;
  try {
    plan.bandwidth_B = j.at("B").get<double>();
    plan.decimation_M = j.at("M").get<int>();
    plan.fraction = j.at("fraction").get<double>();
  } catch (const json::exception& e) {
    throw InputError("plan JSON missing required key in " + path + ": " + e.what());
  }
  return plan;
}

void write_filter_profile_json(const std::string& path, const std::vector<double>& ar,
                               const std::vector<double>& ma,
                               const std::vector<double>& variance) {
  json j;
  j["ar"] = ar;
  j["ma"] = ma;
  j["variance"] = variance;
  auto f = open_out(path);
  f << j.dump(2) << "\n";
}

void read_filter_profile_json(const std::string& path, std::vector<double>& ar,
                              std::vector<double>& ma, std::vector<double>& variance) {
  const json j = load_json(path);
  ar = j.value("ar", std::vector<double>{});
  ma = j.value("ma", std::vector<double>{1.0});
  variance = j.value("variance", std::vector<double>{});
}

void write_assumption_report_json(const std::string& path, const AssumptionReport& report) {
  json j;
  j["c_hat"] = report.c_hat;
  j["rxm_sum"] = report.rxm_sum;
  j["bounded"] = report.bounded;
  j["summable"] = report.summable;
  j["pass"] = report.pass;
  if (report.has_nan)
    j["nan_location"] = {report.nan_t1, report.nan_t2};
  else
    j["nan_location"] = nullptr;
  auto f = open_out(path);
  f << j.dump(2) << "\n";
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows) {
  auto f = open_out(path);
  f << "N,sup_distance\n";
  for (const auto& r : rows) f << r.window << "," << format_double(r.sup_distance) << "\n";
  if (!f) throw InputError("write failed: " + path);
}

}  // namespace nsspec::io
