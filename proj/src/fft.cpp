#include "nsspec/fft.hpp"

#include <cmath>
#include <numbers>

#include "nsspec/errors.hpp"

namespace nsspec {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<std::complex<double>> forward_twiddles(std::size_t n) {
  std::vector<std::complex<double>> tw(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    tw[k] = {std::cos(ang), std::sin(ang)};
  }
  return tw;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
  if (n_ == 0) throw InputError("fft size must be positive");
  if (pow2_) {
    twiddle_ = forward_twiddles(n_);
    return;
  }
  // Bluestein tables. The chirp angle pi*k^2/n is reduced with k^2 mod 2n so
  // large indices do not lose precision in the trig argument.
  conv_n_ = next_pow2(2 * n_ - 1);
  twiddle_ = forward_twiddles(conv_n_);
  chirp_fwd_.resize(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    const std::uint64_t q = (static_cast<std::uint64_t>(k) * k) % (2 * n_);
    const double ang = -std::numbers::pi * static_cast<double>(q) / static_cast<double>(n_);
    chirp_fwd_[k] = {std::cos(ang), std::sin(ang)};
  }
  auto build_filter = [&](int sign) {
    std::vector<std::complex<double>> b(conv_n_, {0.0, 0.0});
    for (std::size_t t = 0; t < n_; ++t) {
      // Convolution kernel exp(-sign*j*pi*t^2/n) at offsets t and -t.
      const std::complex<double> v =
          (sign < 0) ? std::conj(chirp_fwd_[t]) : chirp_fwd_[t];
      b[t] = v;
      if (t > 0) b[conv_n_ - t] = v;
    }
    radix2(b.data(), -1, conv_n_, twiddle_);
    return b;
  };
  chirp_filter_fwd_ = build_filter(-1);
  chirp_filter_inv_ = build_filter(+1);
}

void Fft::radix2(std::complex<double>* x, int sign, std::size_t n,
                 const std::vector<std::complex<double>>& twiddle) const {
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t block = 0; block < n; block += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> tw = twiddle[k * step];
        const std::complex<double> w = (sign < 0) ? tw : std::conj(tw);
        std::complex<double>& a = x[block + k];
        std::complex<double>& b = x[block + k + len / 2];
        const std::complex<double> t = b * w;
        b = a - t;
        a = a + t;
      }
    }
  }
}

void Fft::bluestein(std::complex<double>* x, int sign) const {
  std::vector<std::complex<double>> a(conv_n_, {0.0, 0.0});
  for (std::size_t m = 0; m < n_; ++m) {
    const std::complex<double> c = (sign < 0) ? chirp_fwd_[m] : std::conj(chirp_fwd_[m]);
    a[m] = x[m] * c;
  }
  radix2(a.data(), -1, conv_n_, twiddle_);
  const auto& filter = (sign < 0) ? chirp_filter_fwd_ : chirp_filter_inv_;
  for (std::size_t i = 0; i < conv_n_; ++i) a[i] *= filter[i];
  radix2(a.data(), +1, conv_n_, twiddle_);
  const double scale = 1.0 / static_cast<double>(conv_n_);
  for (std::size_t k = 0; k < n_; ++k) {
    const std::complex<double> c = (sign < 0) ? chirp_fwd_[k] : std::conj(chirp_fwd_[k]);
    x[k] = a[k] * c * scale;
  }
}

void Fft::transform(std::complex<double>* x, int sign) const {
  if (sign != -1 && sign != 1) throw InputError("fft sign must be -1 or +1");
  if (n_ == 1) return;
  if (pow2_) {
    radix2(x, sign, n_, twiddle_);
    return;
  }
  bluestein(x, sign);
}

}  // namespace nsspec
