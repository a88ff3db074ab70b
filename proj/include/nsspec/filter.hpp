#pragma once

#include <complex>
#include <vector>

namespace nsspec {

/// Stable LTI system in autoregressive form:
///   x[k] = sum_i ma[i]*w[k-i] + sum_j ar[j]*x[k-j-1]
/// with the impulse response truncated once its tail is negligible.
struct LtiFilter {
  std::vector<double> ar;         // feedback a_1..a_q
  std::vector<double> ma;         // feedforward b_0..b_r
  std::vector<double> impulse_response;  // h[0..L)
  double truncation_tol = 0.0;    // relative tail-energy bound used for L

  int tap_count() const { return static_cast<int>(impulse_response.size()); }
  /// sum_k h[k]^2 over the truncated support.
  double impulse_energy() const;
};

/// Builds the filter and its truncated impulse response. L is the smallest
/// length with |h[L-1]| <= tol*max|h| and tail energy beyond L <= tol*total;
/// pure feedforward filters keep h = ma exactly. Throws UnstableFilter when a
/// characteristic root has modulus >= 1, NonConvergent when L would exceed
/// `cap`.
LtiFilter make_filter(std::vector<double> ar, std::vector<double> ma = {1.0},
                      double truncation_tol = 1e-10, std::size_t cap = 1000000);

/// H(omega) from the exact rational form (not the truncated taps).
std::vector<std::complex<double>> frequency_response(const LtiFilter& filter,
                                                     const std::vector<double>& omegas);

/// Moduli of the characteristic roots of 1 - a_1 z^-1 - ... - a_q z^-q
/// (empty for pure feedforward filters).
std::vector<double> characteristic_root_moduli(const std::vector<double>& ar);

}  // namespace nsspec
