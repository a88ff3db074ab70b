#include "kernels_impl.hpp"

// Scalar reference kernels. These define the semantics the SIMD variants are
// tested against; keep them boring.

namespace nsspec::kernels::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double* y, double alpha, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void mul_scalar(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void accumulate_abs2_scalar(double* acc, const std::complex<double>* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = z[i].real();
    const double im = z[i].imag();
    acc[i] += re * re + im * im;
  }
}

double sum_squares_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

double sum_squared_diff_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace

const Backend kScalarBackend = {
    "scalar",          dot_scalar,         axpy_scalar,
    mul_scalar,        accumulate_abs2_scalar, sum_squares_scalar,
    sum_squared_diff_scalar,
};

}  // namespace nsspec::kernels::detail
