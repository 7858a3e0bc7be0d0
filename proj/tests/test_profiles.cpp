#include <doctest.h>

#include <cmath>

#include "revrad/profiles.hpp"

using namespace revrad;

namespace {

// Central finite differences of h, the independent oracle for the
// closed-form derivatives.
double fd_hs(const ProfileSpec& p, double s, double x, double step = 1e-5) {
  return (p.h(s + step, x) - p.h(s - step, x)) / (2 * step);
}
double fd_hx(const ProfileSpec& p, double s, double x, double step = 1e-5) {
  return (p.h(s, x + step) - p.h(s, x - step)) / (2 * step);
}
double fd_ratio_deriv(const ProfileSpec& p, double s, double x,
                      double step = 1e-5) {
  auto ratio = [&](double xx) {
    auto g = p.grad(s, xx);
    return g[1] / g[0];
  };
  return (ratio(x + step) - ratio(x - step)) / (2 * step);
}

void check_derivatives_on_grid(const ProfileSpec& p, double s_lo, double s_hi,
                               double x_cap = 5.0) {
  const int ns = 24, nx = 24;
  for (int i = 0; i < ns; ++i) {
    const double s = s_lo + (s_hi - s_lo) * (i + 0.5) / ns;
    Interval dom = p.x_domain(s);
    const double hi = p.bounded_above() ? dom.hi : x_cap;
    for (int j = 0; j < nx; ++j) {
      // 5% inset keeps the finite-difference stencils inside the domain
      const double x = dom.lo + (hi - dom.lo) * (0.05 + 0.9 * (j + 0.5) / nx);
      auto g = p.grad(s, x);
      CHECK(std::abs(fd_hs(p, s, x) - g[0]) <= 1e-6 * (1 + std::abs(g[0])));
      CHECK(std::abs(fd_hx(p, s, x) - g[1]) <= 1e-6 * (1 + std::abs(g[1])));
      const double rd = p.ratio_deriv(s, x);
      CHECK(std::abs(fd_ratio_deriv(p, s, x) - rd) <= 1e-6 * (1 + std::abs(rd)));
    }
  }
}

}  // namespace

TEST_CASE("h closed forms at pinned points") {
  CHECK(ProfileSpec::sphere().h(2, 1) == doctest::Approx(3.0));
  CHECK(ProfileSpec::spheroid(2).h(1, 0) == doctest::Approx(1.0));
  CHECK(ProfileSpec::lemon(2).h(0, 0) == doctest::Approx(4.0));
  CHECK(ProfileSpec::cone().h(3, 2) == doctest::Approx(6.0));
}

TEST_CASE("h vanishes on the profile boundary") {
  CHECK(ProfileSpec::sphere().h(2, 2) == doctest::Approx(0.0));
  const double b = std::sqrt(1 + 4.0);
  CHECK(ProfileSpec::spheroid(2).h(1, b) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ProfileSpec::lemon(2).h(1.5, 2.0) == doctest::Approx(0.0));
  CHECK(ProfileSpec::sphere().h(2, -2) == doctest::Approx(0.0));
}

TEST_CASE("domain violations throw") {
  CHECK_THROWS_AS(ProfileSpec::sphere().h(2, 2.5), DomainError);
  CHECK_THROWS_AS(ProfileSpec::lemon(2).h(1, 2.5), DomainError);
  CHECK_THROWS_AS(ProfileSpec::cone().h(3, -1), DomainError);
  CHECK_THROWS_AS(ProfileSpec::sphere().h(-1, 0), DomainError);
}

TEST_CASE("gradients at pinned points") {
  auto gs = ProfileSpec::sphere().grad(2, 1);
  CHECK(gs[0] == doctest::Approx(4.0));
  CHECK(gs[1] == doctest::Approx(-2.0));

  auto ge = ProfileSpec::spheroid(2).grad(1, 0);
  CHECK(ge[0] == doctest::Approx(2.0));  // h(s, 0) = s^2, so h_s = 2s on the axis
  CHECK(ge[1] == doctest::Approx(0.0));
  CHECK(ge[0] == doctest::Approx(fd_hs(ProfileSpec::spheroid(2), 1, 0)).epsilon(1e-6));

  auto gc = ProfileSpec::cone().grad(3, 2);
  CHECK(gc[0] == doctest::Approx(2.0));
  CHECK(gc[1] == doctest::Approx(3.0));
}

TEST_CASE("ratio derivative closed forms") {
  // -1*5*25/625
  CHECK(ProfileSpec::spheroid(2).ratio_deriv(1, 0) == doctest::Approx(-0.2));
  CHECK(ProfileSpec::spheroid(2).ratio_deriv(1, 0) ==
        doctest::Approx(fd_ratio_deriv(ProfileSpec::spheroid(2), 1, 0)).epsilon(1e-6));
  CHECK(ProfileSpec::cone().ratio_deriv(3, 2) == doctest::Approx(-0.75));
  // sphere: h_x/h_s = -x/s, derivative -1/s
  CHECK(ProfileSpec::sphere().ratio_deriv(2, 0.5) == doctest::Approx(-0.5));
}

TEST_CASE("finite-difference audit across all families") {
  check_derivatives_on_grid(ProfileSpec::sphere(), 0.2, 2.2);
  check_derivatives_on_grid(ProfileSpec::spheroid(2), 0.2, 2.2);
  check_derivatives_on_grid(ProfileSpec::lemon(2), 0.1, 5.0);
  check_derivatives_on_grid(ProfileSpec::cone(), 0.2, 2.2);
}

TEST_CASE("evenness of h in x") {
  for (const ProfileSpec& p :
       {ProfileSpec::sphere(), ProfileSpec::spheroid(2), ProfileSpec::lemon(2)}) {
    for (double s : {0.5, 1.0, 2.0}) {
      Interval dom = p.x_domain(s);
      for (int j = 1; j < 10; ++j) {
        const double x = dom.hi * j / 10.0;
        CHECK(p.h(s, x) == doctest::Approx(p.h(s, -x)));
      }
    }
  }
}

TEST_CASE("lemon reparametrization s <-> p") {
  const double alpha = 2;
  const ProfileSpec lemon = ProfileSpec::lemon(alpha);
  double prev_s = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 50; ++i) {
    const double p = 5.0 * i / 50;
    const double s = lemon_s_of_p(alpha, p);
    CHECK(s < prev_s);  // strictly decreasing
    prev_s = s;
    CHECK(lemon_p_of_s(alpha, s) == doctest::Approx(p).epsilon(1e-10));
    // h(p, 0) = s^2
    CHECK(lemon.h(p, 0) == doctest::Approx(s * s));
  }
}

TEST_CASE("mu factorization values") {
  SUBCASE("sphere diagonal") {
    auto v = MuSpec::sphere().eval(2, 2);
    CHECK(v.mu == doctest::Approx(0.0));
    CHECK(v.tau == doctest::Approx(2.0));
    CHECK(v.kappa == doctest::Approx(1.0));
    CHECK(std::isinf(v.g));
  }
  SUBCASE("sphere interior") {
    auto v = MuSpec::sphere().eval(5, 3);
    CHECK(v.mu == doctest::Approx(4.0));
    CHECK(v.mu_t == doctest::Approx(-0.75));
    CHECK(v.g == doctest::Approx(1.25));
    CHECK(v.kappa == doctest::Approx(v.g * std::sqrt(5.0 - 3.0)));
  }
  SUBCASE("lemon diagonal") {
    auto v = MuSpec::lemon(2).eval(1, 1);
    CHECK(v.tau == doctest::Approx(std::sqrt(5.0)));
    CHECK(v.kappa == doctest::Approx(std::sqrt(5.0) / 2));
  }
  SUBCASE("triangle domain") {
    CHECK_THROWS_AS(MuSpec::sphere().eval(1, 2), DomainError);
  }
}

TEST_CASE("mu matches sqrt(s-t) tau and finite-difference mu_t") {
  for (const MuSpec& m :
       {MuSpec::sphere(), MuSpec::spheroid(2), MuSpec::lemon(2)}) {
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j <= i; ++j) {
        const double s = 0.2 + 2.0 * (i + 0.5) / 12;
        const double t = 0.2 + (s - 0.2) * (j + 0.25) / 12.5;
        auto v = m.eval(s, t);
        CHECK(v.mu == doctest::Approx(std::sqrt(s - t) * v.tau));
        CHECK(v.g == doctest::Approx(std::sqrt(1 + v.mu_t * v.mu_t)));
        CHECK(v.kappa == doctest::Approx(v.g * std::sqrt(s - t)));
        const double step = 1e-6 * (s - t);
        if (step > 1e-12) {
          const double fd =
              (m.eval(s, t + step).mu - m.eval(s, t - step).mu) / (2 * step);
          CHECK(v.mu_t == doctest::Approx(fd).epsilon(1e-5));
        }
      }
  }
}

TEST_CASE("h(s, mu(s,t)) = t^2 in the normalized radius parametrization") {
  // Sphere and spheroid: h(s, 0) = s^2 already, identity is exact in s.
  for (double s : {0.5, 1.0, 2.0})
    for (double t : {0.3, 0.45}) {
      if (t >= s) continue;
      auto vs = MuSpec::sphere().eval(s, t);
      CHECK(ProfileSpec::sphere().h(s, vs.mu) == doctest::Approx(t * t));
      auto ve = MuSpec::spheroid(2).eval(s, t);
      CHECK(ProfileSpec::spheroid(2).h(s, ve.mu) == doctest::Approx(t * t));
      // Lemon: evaluate h at the arc parameter p(s).
      auto vl = MuSpec::lemon(2).eval(s, t);
      const double p = lemon_p_of_s(2, s);
      CHECK(ProfileSpec::lemon(2).h(p, vl.mu) == doctest::Approx(t * t));
    }
}

TEST_CASE("kappa positive over the triangle") {
  for (const MuSpec& m :
       {MuSpec::sphere(), MuSpec::spheroid(2), MuSpec::lemon(2)}) {
    double kmin = std::numeric_limits<double>::infinity();
    const int n = 200;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        const double s = 0.2 + 2.0 * i / (n - 1);
        const double t = 0.2 + (s - 0.2) * j / std::max(1, i);
        kmin = std::min(kmin, m.eval(s, t).kappa);
      }
    CHECK(kmin > 0);
  }
}

TEST_CASE("surface points satisfy the defining relation") {
  SUBCASE("sphere center hit") {
    auto p = surface_point(ProfileSpec::sphere(), 1, 0, 0, kPi, 0);
    CHECK(p[0] == doctest::Approx(0.0));
    CHECK(p[1] == doctest::Approx(0.0));
    CHECK(p[2] == doctest::Approx(0.0));
  }
  SUBCASE("boundary points land on the rotation axis") {
    for (const ProfileSpec& pr : {ProfileSpec::sphere(), ProfileSpec::spheroid(2)}) {
      const double s = 1.3;
      const double xb = pr.x_domain(s).hi;
      auto p = surface_point(pr, s, 0.7, 0.1, 0.4, 0.1 + xb);
      CHECK(p[0] == doctest::Approx(std::cos(0.7)));
      CHECK(p[1] == doctest::Approx(std::sin(0.7)));
    }
  }
  SUBCASE("lemon tip-to-tip width") {
    auto p = surface_point(ProfileSpec::lemon(2), 0, 0, 0, kPi, 0);
    CHECK(p[0] == doctest::Approx(-1.0));
    CHECK(p[1] == doctest::Approx(0.0));
    CHECK(p[2] == doctest::Approx(0.0));
  }
  SUBCASE("distance relation |x' - y'| = sqrt(h)") {
    const ProfileSpec pr = ProfileSpec::spheroid(2);
    const double s = 1.1, th = 0.3, y3 = -0.2, phi = 2.0, x3 = 0.5;
    auto p = surface_point(pr, s, th, y3, phi, x3);
    const double dx = p[0] - std::cos(th), dy = p[1] - std::sin(th);
    CHECK(std::hypot(dx, dy) ==
          doctest::Approx(std::sqrt(pr.h(s, x3 - y3))).epsilon(1e-12));
  }
}
