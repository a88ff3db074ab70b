#include "nsspec/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nsspec/errors.hpp"
#include "nsspec/kernels.hpp"

namespace nsspec {

namespace {

// Roots of z^q - a_1 z^{q-1} - ... - a_q by Durand-Kerner iteration.
std::vector<std::complex<double>> characteristic_roots(std::vector<double> ar) {
  while (!ar.empty() && ar.back() == 0.0) ar.pop_back();
  const std::size_t q = ar.size();
  std::vector<std::complex<double>> coeff(q + 1);  // coeff[i] multiplies z^(q-i)
  coeff[0] = 1.0;
  for (std::size_t i = 0; i < q; ++i) coeff[i + 1] = -ar[i];

  auto eval = [&](std::complex<double> z) {
    std::complex<double> acc = coeff[0];
    for (std::size_t i = 1; i <= q; ++i) acc = acc * z + coeff[i];
    return acc;
  };

  std::vector<std::complex<double>> roots(q);
  const std::complex<double> base(0.4, 0.9);  // not a root of unity
  std::complex<double> p = 1.0;
  for (std::size_t i = 0; i < q; ++i) {
    p *= base;
    roots[i] = p;
  }
  for (int iter = 0; iter < 1000; ++iter) {
    double worst = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
      std::complex<double> denom = 1.0;
      for (std::size_t j = 0; j < q; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      const std::complex<double> delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      worst = std::max(worst, std::abs(delta));
    }
    if (worst < 1e-14) break;
  }
  return roots;
}

}  // namespace

std::vector<double> characteristic_root_moduli(const std::vector<double>& ar) {
  std::vector<double> moduli;
  for (const auto& r : characteristic_roots(ar)) moduli.push_back(std::abs(r));
  std::sort(moduli.begin(), moduli.end());
  return moduli;
}

double LtiFilter::impulse_energy() const {
  return kernels::sum_squares(impulse_response.data(), impulse_response.size());
}

LtiFilter make_filter(std::vector<double> ar, std::vector<double> ma, double truncation_tol,
                      std::size_t cap) {
  if (ma.empty()) ma = {1.0};
  if (!(truncation_tol > 0.0 && truncation_tol < 1.0))
    throw InputError("truncation_tol must lie in (0, 1)");

  const auto moduli = characteristic_root_moduli(ar);
  if (!moduli.empty() && moduli.back() >= 1.0 - 1e-12) throw UnstableFilter(moduli.back());

  LtiFilter f;
  f.truncation_tol = truncation_tol;

  const bool ma_all_zero = std::all_of(ma.begin(), ma.end(), [](double b) { return b == 0.0; });
  if (ar.empty() || ma_all_zero) {
    // Pure feedforward (or identically zero): the impulse response is the
    // tap vector, exactly.
    f.ar = std::move(ar);
    f.ma = ma;
    f.impulse_response = ma_all_zero ? std::vector<double>{0.0} : std::move(ma);
    while (f.impulse_response.size() > 1 && f.impulse_response.back() == 0.0)
      f.impulse_response.pop_back();
    return f;
  }

  // Drive the recursion with a unit impulse until the response has decayed
  // far enough that the dual truncation conditions are decidable.
  std::vector<double> h;
  double max_abs = 0.0;
  const double settle = truncation_tol * 1e-4;
  std::size_t quiet = 0;
  const std::size_t quiet_needed = std::max<std::size_t>(8, ar.size() + 1);
  for (std::size_t k = 0;; ++k) {
    if (k > cap + quiet_needed + 1)
      throw NonConvergent("impulse response did not settle within cap=" + std::to_string(cap));
    double v = (k < ma.size()) ? ma[k] : 0.0;
    for (std::size_t j = 0; j < ar.size(); ++j)
      if (k > j) v += ar[j] * h[k - j - 1];
    h.push_back(v);
    max_abs = std::max(max_abs, std::abs(v));
    if (max_abs > 0.0 && std::abs(v) <= settle * max_abs && k >= ma.size())
      ++quiet;
    else
      quiet = 0;
    if (quiet >= quiet_needed) break;
  }

  const double total_energy = kernels::sum_squares(h.data(), h.size());
  // tail[L] = energy of h[L..): accumulate from the back.
  std::vector<double> tail(h.size() + 1, 0.0);
  for (std::size_t k = h.size(); k-- > 0;) tail[k] = tail[k + 1] + h[k] * h[k];

  std::size_t L = h.size();
  for (std::size_t cand = 1; cand <= h.size(); ++cand) {
    if (std::abs(h[cand - 1]) <= truncation_tol * max_abs &&
        tail[cand] <= truncation_tol * total_energy) {
      L = cand;
      break;
    }
  }
  if (L > cap)
    throw NonConvergent("impulse-response length " + std::to_string(L) + " exceeds cap");
  h.resize(L);

  f.ar = std::move(ar);
  f.ma = std::move(ma);
  f.impulse_response = std::move(h);
  return f;
}

std::vector<std::complex<double>> frequency_response(const LtiFilter& filter,
                                                     const std::vector<double>& omegas) {
  std::vector<std::complex<double>> out(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const std::complex<double> z1 = std::polar(1.0, -omegas[i]);
    std::complex<double> num = 0.0;
    for (std::size_t k = filter.ma.size(); k-- > 0;) num = num * z1 + filter.ma[k];
    std::complex<double> den_tail = 0.0;
    for (std::size_t j = filter.ar.size(); j-- > 0;) den_tail = (den_tail + filter.ar[j]) * z1;
    out[i] = num / (1.0 - den_tail);
  }
  return out;
}

}  // namespace nsspec
