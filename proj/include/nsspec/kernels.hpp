#pragma once

#include <complex>
#include <cstddef>

namespace nsspec::kernels {

// Data-parallel inner loops behind the estimators. Each kernel has a scalar
// reference implementation and SIMD variants (AVX2 on x86-64, NEON on
// aarch64) selected once at startup from CPU capabilities. The scalar path is
// the semantic reference; SIMD variants are equivalence-tested against it.

struct Backend {
  const char* name;
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double*, double, const double*, std::size_t);
  void (*mul)(double*, const double*, const double*, std::size_t);
  void (*accumulate_abs2)(double*, const std::complex<double>*, std::size_t);
  double (*sum_squares)(const double*, std::size_t);
  double (*sum_squared_diff)(const double*, const double*, std::size_t);
};

/// The scalar reference backend (always available).
const Backend& scalar_backend();
/// The backend selected for this process (AVX2/NEON when supported).
const Backend& active_backend();
/// Overrides the selected backend ("scalar", "avx2", "neon", "auto").
/// Throws InputError for names unavailable on this machine.
void select_backend(const char* name);

// Dispatched entry points.

/// sum_i a[i]*b[i]
inline double dot(const double* a, const double* b, std::size_t n) {
  return active_backend().dot(a, b, n);
}
/// y[i] += alpha*x[i]
inline void axpy(double* y, double alpha, const double* x, std::size_t n) {
  active_backend().axpy(y, alpha, x, n);
}
/// out[i] = a[i]*b[i]
inline void mul(double* out, const double* a, const double* b, std::size_t n) {
  active_backend().mul(out, a, b, n);
}
/// acc[i] += |z[i]|^2
inline void accumulate_abs2(double* acc, const std::complex<double>* z, std::size_t n) {
  active_backend().accumulate_abs2(acc, z, n);
}
/// sum_i a[i]^2
inline double sum_squares(const double* a, std::size_t n) {
  return active_backend().sum_squares(a, n);
}
/// sum_i (a[i]-b[i])^2
inline double sum_squared_diff(const double* a, const double* b, std::size_t n) {
  return active_backend().sum_squared_diff(a, b, n);
}

}  // namespace nsspec::kernels
