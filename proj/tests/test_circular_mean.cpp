#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "revrad/circular_mean.hpp"

using namespace revrad;

namespace {

ComplexGrid2 random_complex(int rows, int cols, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  ComplexGrid2 a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = Complex(unif(rng), unif(rng));
  return a;
}

// Adaptive Simpson quadrature on [a, b].
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int depth = 20) {
  auto simpson = [&](double lo, double hi) {
    return (hi - lo) / 6.0 * (f(lo) + 4 * f(0.5 * (lo + hi)) + f(hi));
  };
  std::function<double(double, double, double, double, int)> rec =
      [&](double lo, double hi, double whole, double eps, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double left = simpson(lo, mid), right = simpson(mid, hi);
    if (d <= 0 || std::abs(left + right - whole) < 15 * eps)
      return left + right + (left + right - whole) / 15.0;
    return rec(lo, mid, left, eps / 2, d - 1) + rec(mid, hi, right, eps / 2, d - 1);
  };
  return rec(a, b, simpson(a, b), tol, depth);
}

}  // namespace

TEST_CASE("zero slice maps to zero and back") {
  CircularMeanOp M(AxisGrid(-1, 1, 33), AxisGrid(0.2, 2.2, 16), 8);
  ComplexGrid2 zero = ComplexGrid2::Zero(33, 33);
  CHECK(M.forward(zero).abs2().sum() == 0.0);
  CHECK(M.adjoint(ComplexGrid2::Zero(16, 8)).abs2().sum() == 0.0);
}

TEST_CASE("constant slice integrates to 2 pi t") {
  // Grid wide enough that every circle sample stays interior.
  CircularMeanOp M(AxisGrid(-2, 2, 201), AxisGrid(0.5, 0.8, 2), 12);
  ComplexGrid2 ones = ComplexGrid2::Constant(201, 201, Complex(1, 0));
  ComplexGrid2 out = M.forward(ones);
  for (int j = 0; j < 12; ++j) {
    CHECK(out(0, j).real() == doctest::Approx(0.5 * 2 * kPi));
    CHECK(out(1, j).real() == doctest::Approx(0.8 * 2 * kPi));
  }
}

TEST_CASE("Gaussian circle integral matches adaptive quadrature") {
  const double sigma = 0.2, t = 1.0;
  const AxisGrid g(-2.5, 2.5, 1251);  // 4e-3 pitch
  ComplexGrid2 slice(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const double r2 = g.at(i) * g.at(i) + g.at(j) * g.at(j);
      slice(i, j) = Complex(std::exp(-r2 / (2 * sigma * sigma)), 0);
    }
  CircularMeanOp M(g, AxisGrid(t, 2 * t, 2), 1);
  const double got = M.forward(slice)(0, 0).real();

  auto integrand = [&](double phi) {
    const double x = 1.0 + t * std::cos(phi);
    const double y = t * std::sin(phi);
    return std::exp(-(x * x + y * y) / (2 * sigma * sigma));
  };
  const double want = t * adaptive_simpson(integrand, 0, 2 * kPi, 1e-12);
  CHECK(std::abs(got - want) <= 1e-4 * std::abs(want));
}

TEST_CASE("forward and adjoint are matched") {
  CircularMeanOp M(AxisGrid(-1, 1, 25), AxisGrid(0.2, 2.2, 12), 9);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    ComplexGrid2 x = random_complex(25, 25, 100 + seed);
    ComplexGrid2 y = random_complex(12, 9, 200 + seed);
    const Complex lhs = (M.forward(x).conjugate() * y).sum();
    const Complex rhs = (x.conjugate() * M.adjoint(y)).sum();
    const double scale = std::sqrt(x.abs2().sum()) * std::sqrt(y.abs2().sum());
    CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
  }
}

TEST_CASE("adjoint of a single sample smears a ring") {
  const AxisGrid g(-2, 2, 81);
  CircularMeanOp M(g, AxisGrid(0.5, 1.5, 3), 4);
  ComplexGrid2 data = ComplexGrid2::Zero(3, 4);
  data(1, 0) = Complex(1, 0);  // t = 1.0, theta = 0 (center (1, 0))
  ComplexGrid2 img = M.adjoint(data);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      if (std::abs(img(i, j)) == 0.0) continue;
      const double r = std::hypot(g.at(i) - 1.0, g.at(j));
      CHECK(std::abs(r - 1.0) < 2 * g.step());
    }
}

TEST_CASE("norm estimate is stable across seeds") {
  CircularMeanOp M(AxisGrid(-1, 1, 21), AxisGrid(0.2, 2.2, 11), 8);
  const double a = M.norm_estimate(30, 1);
  const double b = M.norm_estimate(30, 2);
  CHECK(a == doctest::Approx(b).epsilon(1e-3));
  CHECK(a > 0);
}

TEST_CASE("nonpositive radii are rejected") {
  CHECK_THROWS_AS(CircularMeanOp(AxisGrid(-1, 1, 21), AxisGrid(0.0, 1.0, 4), 8),
                  ConfigError);
}
