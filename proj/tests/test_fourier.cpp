#include <doctest.h>

#include <cmath>
#include <random>

#include "revrad/fourier.hpp"

using namespace revrad;

namespace {

Volume random_volume(int n, double extent, uint64_t seed) {
  Volume vol(n, extent);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (double& v : vol.values) v = unif(rng);
  return vol;
}

}  // namespace

TEST_CASE("ifft of fft is the identity") {
  Volume vol = random_volume(17, 1.0, 3);
  double resid = 0;
  Volume back = axial_ifft(axial_fft(vol), vol.extent, &resid);
  double num = 0, den = 0;
  for (size_t i = 0; i < vol.values.size(); ++i) {
    num += (back.values[i] - vol.values[i]) * (back.values[i] - vol.values[i]);
    den += vol.values[i] * vol.values[i];
  }
  CHECK(std::sqrt(num / den) < 1e-12);
  CHECK(resid < 1e-12);
}

TEST_CASE("constant volume concentrates at xi = 0") {
  Volume vol(9, 1.0);
  for (double& v : vol.values) v = 3.5;
  auto slices = axial_fft(vol);
  CHECK(std::abs(slices[0](4, 4)) == doctest::Approx(9 * 3.5));
  for (size_t k = 1; k < slices.size(); ++k)
    CHECK(std::sqrt(slices[k].abs2().maxCoeff()) < 1e-12);
}

TEST_CASE("real input gives Hermitian spectrum") {
  Volume vol = random_volume(15, 2.0, 5);
  auto slices = axial_fft(vol);
  const int n = vol.n;
  for (int k = 1; k < n; ++k) {
    double diff = std::sqrt((slices[k] - slices[n - k].conjugate()).abs2().maxCoeff());
    CHECK(diff < 1e-10);
  }
  // matching frequencies are opposite
  CHECK(fft_xi(1, n, vol.spacing()) ==
        doctest::Approx(-fft_xi(n - 1, n, vol.spacing())));
}

TEST_CASE("axial delta has a flat spectrum") {
  Volume vol(11, 1.0);
  vol.at(5, 5, 5) = 1.0;
  auto slices = axial_fft(vol);
  for (const auto& s : slices) CHECK(std::abs(s(5, 5)) == doctest::Approx(1.0));
}

TEST_CASE("frequency grid convention") {
  // xi_k = 2 pi k / (n step) for k <= n/2, negative mirror beyond
  const int n = 10;
  const double step = 0.25;
  CHECK(fft_xi(0, n, step) == doctest::Approx(0.0));
  CHECK(fft_xi(1, n, step) == doctest::Approx(2 * kPi / (n * step)));
  CHECK(fft_xi(n - 1, n, step) == doctest::Approx(-2 * kPi / (n * step)));
  CHECK(fft_xi(n / 2, n, step) == doctest::Approx(kPi / step));
}
