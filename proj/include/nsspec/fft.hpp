#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nsspec {

/// Complex FFT of arbitrary length: iterative radix-2 for powers of two,
/// Bluestein's chirp-z algorithm otherwise. Unnormalized in both directions;
/// sign -1 is the forward convention exp(-j*2*pi*k*m/n).
///
/// Construction precomputes twiddle/chirp tables; transform() is const and
/// safe to call concurrently from multiple threads.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }

  /// In-place transform of x[0..n); sign must be -1 or +1.
  void transform(std::complex<double>* x, int sign) const;

  void forward(std::complex<double>* x) const { transform(x, -1); }
  void inverse_unscaled(std::complex<double>* x) const { transform(x, +1); }

 private:
  void radix2(std::complex<double>* x, int sign, std::size_t n,
              const std::vector<std::complex<double>>& twiddle) const;
  void bluestein(std::complex<double>* x, int sign) const;

  std::size_t n_;
  bool pow2_;
  std::size_t conv_n_ = 0;  // power-of-two length for Bluestein convolution
  std::vector<std::complex<double>> twiddle_;       // radix-2 tables (size n/2 or conv_n/2)
  std::vector<std::complex<double>> chirp_fwd_;     // exp(-j*pi*k^2/n)
  std::vector<std::complex<double>> chirp_filter_fwd_;  // FFT of conjugate chirp, forward
  std::vector<std::complex<double>> chirp_filter_inv_;  // same for sign = +1
};

}  // namespace nsspec
