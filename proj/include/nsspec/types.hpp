#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace nsspec {

/// A set of independent realizations of a length-`num_samples` discrete
/// signal, stored row-major (one realization per row). The ensemble average
/// over realizations stands in for the expectation operator everywhere.
struct Ensemble {
  int num_realizations = 0;
  int num_samples = 0;
  std::uint64_t seed = 0;  // 0 when ingested from a file
  int decimation = 1;      // keep-every-M factor already applied (1 = none)
  int source_length = 0;   // pre-decimation length (== num_samples if none)
  std::vector<double> data;

  Ensemble() = default;
  Ensemble(int realizations, int samples, std::uint64_t seed_value = 0);

  double* row(int p) { return data.data() + static_cast<std::size_t>(p) * num_samples; }
  const double* row(int p) const {
    return data.data() + static_cast<std::size_t>(p) * num_samples;
  }
  double& at(int p, int k) { return data[static_cast<std::size_t>(p) * num_samples + k]; }
  double at(int p, int k) const {
    return data[static_cast<std::size_t>(p) * num_samples + k];
  }

  /// Throws InvariantError unless P >= 1, K >= 1 and every sample is finite.
  void validate() const;
};

/// Per-sample variance of nonstationary white noise. Values are validated
/// (nonnegative, finite) and the arithmetic mean is fixed at construction.
class VarianceProfile {
 public:
  explicit VarianceProfile(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  double operator[](int k) const { return values_[k]; }
  int size() const { return static_cast<int>(values_.size()); }
  double mean_variance() const { return mean_; }
  double max_variance() const { return max_; }

 private:
  std::vector<double> values_;
  double mean_ = 0.0;
  double max_ = 0.0;
};

/// One-dimensional power spectral density on a frequency grid in [-pi, pi).
struct Spectrum {
  std::vector<double> omegas;
  std::vector<double> values;

  int size() const { return static_cast<int>(omegas.size()); }

  /// Invariants: values >= -eps_num with eps_num = 1e-9 * max value, and
  /// value(-w) == value(w) within 1e-6 relative wherever -w is on the grid.
  void validate() const;
};

/// Two-dimensional generalized PSD on a frequency-pair grid; values are
/// row-major over (u, v).
struct BiSpectrum {
  std::vector<double> u_grid;
  std::vector<double> v_grid;
  std::vector<std::complex<double>> values;

  std::complex<double>& at(int i, int j) {
    return values[static_cast<std::size_t>(i) * v_grid.size() + j];
  }
  std::complex<double> at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * v_grid.size() + j];
  }

  /// Hermitian-type symmetry for real processes: K(u,v) == conj(K(v,u))
  /// within 1e-6 relative (requires u_grid == v_grid).
  void validate() const;
};

/// Real sequence indexed by lag tau in [-max_lag, max_lag].
struct LagFunction {
  int max_lag = 0;
  std::vector<double> values;  // index tau + max_lag

  LagFunction() = default;
  explicit LagFunction(int max_lag_value)
      : max_lag(max_lag_value), values(2 * static_cast<std::size_t>(max_lag_value) + 1, 0.0) {}

  double& at(int tau) { return values[static_cast<std::size_t>(tau + max_lag)]; }
  double at(int tau) const { return values[static_cast<std::size_t>(tau + max_lag)]; }
  int size() const { return 2 * max_lag + 1; }

  /// Max |v(tau) - v(-tau)|; 0 for symmetric lag functions.
  double asymmetry() const;
};

/// Dense row-major square matrix; holds the estimated autocorrelation
/// R(t1, t2).
struct SquareMatrix {
  int n = 0;
  std::vector<double> m;

  SquareMatrix() = default;
  explicit SquareMatrix(int size)
      : n(size), m(static_cast<std::size_t>(size) * size, 0.0) {}

  double& at(int i, int j) { return m[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return m[static_cast<std::size_t>(i) * n + j]; }
  double* row(int i) { return m.data() + static_cast<std::size_t>(i) * n; }
  const double* row(int i) const { return m.data() + static_cast<std::size_t>(i) * n; }
};

/// Centered DFT frequency grid: omega_m = 2*pi*(m - n/2)/n, m = 0..n-1.
/// Covers [-pi, pi) for even n and (-pi, pi) for odd n.
std::vector<double> centered_grid(int n);

/// True if `grid` equals centered_grid(grid.size()) exactly.
bool is_centered_dft_grid(const std::vector<double>& grid);

}  // namespace nsspec
