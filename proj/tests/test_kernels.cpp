#include <doctest.h>

#include <complex>
#include <cstring>
#include <string>
#include <vector>

#include "nsspec/errors.hpp"
#include "nsspec/kernels.hpp"
#include "nsspec/rng.hpp"

using namespace nsspec;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t stream) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rng::gaussian(7, stream, i);
  return v;
}

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 32, 33, 100, 1000};

}  // namespace

TEST_CASE("simd kernels match the scalar reference") {
  const kernels::Backend& simd = kernels::active_backend();
  const kernels::Backend& ref = kernels::scalar_backend();
  INFO("active backend: ", simd.name);

  for (std::size_t n : kSizes) {
    const auto a = random_vec(n, 1);
    const auto b = random_vec(n, 2);
    const double scale = static_cast<double>(n) + 1.0;

    CHECK(std::abs(simd.dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <=
          1e-12 * scale);
    CHECK(std::abs(simd.sum_squares(a.data(), n) - ref.sum_squares(a.data(), n)) <= 1e-12 * scale);
    CHECK(std::abs(simd.sum_squared_diff(a.data(), b.data(), n) -
                   ref.sum_squared_diff(a.data(), b.data(), n)) <= 1e-12 * scale);

    auto y1 = random_vec(n, 3);
    auto y2 = y1;
    simd.axpy(y1.data(), 1.375, a.data(), n);
    ref.axpy(y2.data(), 1.375, a.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-13));

    std::vector<double> m1(n), m2(n);
    simd.mul(m1.data(), a.data(), b.data(), n);
    ref.mul(m2.data(), a.data(), b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(m1[i] == m2[i]);

    std::vector<std::complex<double>> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = {a[i], b[i]};
    auto acc1 = random_vec(n, 4);
    auto acc2 = acc1;
    simd.accumulate_abs2(acc1.data(), z.data(), n);
    ref.accumulate_abs2(acc2.data(), z.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(acc1[i] == doctest::Approx(acc2[i]).epsilon(1e-13));
  }
}

TEST_CASE("backend selection") {
  const std::string original = kernels::active_backend().name;
  kernels::select_backend("scalar");
  CHECK(std::string(kernels::active_backend().name) == "scalar");
  CHECK(kernels::dot(nullptr, nullptr, 0) == 0.0);
  kernels::select_backend("auto");
  CHECK(std::string(kernels::active_backend().name) == original);
  CHECK_THROWS_AS(kernels::select_backend("mmx"), InputError);
}
