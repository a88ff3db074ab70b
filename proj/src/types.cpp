#include "nsspec/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nsspec/errors.hpp"

namespace nsspec {

Ensemble::Ensemble(int realizations, int samples, std::uint64_t seed_value)
    : num_realizations(realizations),
      num_samples(samples),
      seed(seed_value),
      source_length(samples),
      data(static_cast<std::size_t>(realizations) * samples, 0.0) {}

void Ensemble::validate() const {
  if (num_realizations < 1 || num_samples < 1)
    throw InvariantError("ensemble requires P >= 1 and K >= 1");
  if (data.size() != static_cast<std::size_t>(num_realizations) * num_samples)
    throw InvariantError("ensemble data size does not match P x K");
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i]))
      throw InvariantError("ensemble sample " + std::to_string(i) + " is not finite");
  }
}

VarianceProfile::VarianceProfile(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("variance profile must be non-empty");
  double sum = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("variance profile contains a non-finite value");
    if (v < 0.0) throw InputError("variance profile contains a negative value");
    sum += v;
    max_ = std::max(max_, v);
  }
  mean_ = sum / static_cast<double>(values_.size());
}

void Spectrum::validate() const {
  if (omegas.size() != values.size())
    throw InvariantError("spectrum grid/value size mismatch");
  double peak = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw InvariantError("spectrum value is not finite");
    peak = std::max(peak, std::abs(v));
  }
  const double eps_num = 1e-9 * peak;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < -eps_num - 1e-300)
      throw InvariantError("spectrum bin " + std::to_string(i) + " below -eps_num: " +
                           std::to_string(values[i]));
  }
  // Mirror-symmetry where the grid provides both signs.
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (omegas[i] <= 0.0) continue;
    auto it = std::find(omegas.begin(), omegas.end(), -omegas[i]);
    if (it == omegas.end()) continue;
    const double a = values[i];
    const double b = values[static_cast<std::size_t>(it - omegas.begin())];
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    if (std::abs(a - b) > 1e-6 * scale + 1e-12 * peak)
      throw InvariantError("spectrum asymmetric at omega " + std::to_string(omegas[i]));
  }
}

void BiSpectrum::validate() const {
  if (values.size() != u_grid.size() * v_grid.size())
    throw InvariantError("bispectrum grid/value size mismatch");
  if (u_grid != v_grid) return;  // symmetry only defined on matching grids
  const int n = static_cast<int>(u_grid.size());
  double peak = 0.0;
  for (const auto& z : values) peak = std::max(peak, std::abs(z));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const std::complex<double> a = at(i, j);
      const std::complex<double> b = std::conj(at(j, i));
      const double scale = std::max({std::abs(a), std::abs(b), 1e-9 * peak, 1e-300});
      if (std::abs(a - b) > 1e-6 * scale)
        throw InvariantError("bispectrum breaks K(u,v) == conj(K(v,u)) at (" +
                             std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
}

double LagFunction::asymmetry() const {
  double worst = 0.0;
  for (int tau = 1; tau <= max_lag; ++tau)
    worst = std::max(worst, std::abs(at(tau) - at(-tau)));
  return worst;
}

std::vector<double> centered_grid(int n) {
  std::vector<double> omegas(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m)
    omegas[static_cast<std::size_t>(m)] =
        2.0 * std::numbers::pi * static_cast<double>(m - n / 2) / static_cast<double>(n);
  return omegas;
}

bool is_centered_dft_grid(const std::vector<double>& grid) {
  if (grid.empty()) return false;
  return grid == centered_grid(static_cast<int>(grid.size()));
}

}  // namespace nsspec
