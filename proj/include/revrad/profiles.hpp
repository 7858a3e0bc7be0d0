#ifndef REVRAD_PROFILES_HPP
#define REVRAD_PROFILES_HPP

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "revrad/core.hpp"
#include "revrad/errors.hpp"

namespace revrad {

enum class Family { Sphere, Spheroid, Lemon, Cone };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::Sphere: return "sphere";
    case Family::Spheroid: return "spheroid";
    case Family::Lemon: return "lemon";
    case Family::Cone: return "cone";
  }
  return "?";
}

inline Family family_from_name(const std::string& s) {
  if (s == "sphere") return Family::Sphere;
  if (s == "spheroid") return Family::Spheroid;
  if (s == "lemon") return Family::Lemon;
  if (s == "cone") return Family::Cone;
  throw ConfigError("unknown family: " + s);
}

// Cylinder of centers S = Q x R with Q a circle of given radius.
// A center is (theta, y3) -> (r cos(theta), r sin(theta), y3).
struct CenterSurface {
  double radius = 1.0;
  double y3_min = -5.0;
  double y3_max = 5.0;

  std::array<double, 3> center(double theta, double y3) const {
    return {radius * std::cos(theta), radius * std::sin(theta), y3};
  }

  // Unsigned distance of a point from the cylinder.
  double distance(double x1, double x2, double /*x3*/) const {
    return std::abs(std::hypot(x1, x2) - radius);
  }
};

struct Interval {
  double lo, hi;
};

// Revolution-profile family h(s, x) with closed-form derivatives.
//
// The radial parameter is s for Sphere/Spheroid/Cone and p for Lemon; the
// Lemon s <-> p bijection is exposed separately (lemon_s_of_p / lemon_p_of_s).
// All evaluators throw DomainError outside the closure of Omega_h.
struct ProfileSpec {
  Family family = Family::Sphere;
  double c = 0.0;      // spheroid linear eccentricity
  double alpha = 0.0;  // lemon tip distance

  static ProfileSpec sphere() { return {Family::Sphere, 0, 0}; }
  static ProfileSpec spheroid(double c) {
    if (!(c > 0)) throw ConfigError("spheroid: c must be positive");
    return {Family::Spheroid, c, 0};
  }
  static ProfileSpec lemon(double alpha) {
    if (!(alpha > 0)) throw ConfigError("lemon: alpha must be positive");
    return {Family::Lemon, 0, alpha};
  }
  static ProfileSpec cone() { return {Family::Cone, 0, 0}; }

  // Admissible x interval Omega_{h,s} at radial parameter s (p for Lemon).
  // The cone interval is unbounded above; hi is +inf.
  Interval x_domain(double s) const {
    switch (family) {
      case Family::Sphere:
        if (!(s > 0)) throw DomainError("sphere: s must be positive");
        return {-s, s};
      case Family::Spheroid: {
        if (!(s > 0)) throw DomainError("spheroid: s must be positive");
        double b = std::sqrt(s * s + c * c);
        return {-b, b};
      }
      case Family::Lemon:
        if (s < 0) throw DomainError("lemon: p must be nonnegative");
        return {-alpha, alpha};
      case Family::Cone:
        return {0.0, std::numeric_limits<double>::infinity()};
    }
    return {0, 0};
  }

  bool bounded_above() const { return family != Family::Cone; }

  void require_in_closure(double s, double x) const {
    Interval d = x_domain(s);
    const double slack = 1e-12 * (1.0 + std::abs(d.lo) + std::abs(x));
    if (x < d.lo - slack || x > d.hi + slack)
      throw DomainError("(s,x)=(" + std::to_string(s) + "," + std::to_string(x) +
                        ") outside domain of " + family_name(family));
  }

  double h(double s, double x) const {
    require_in_closure(s, x);
    switch (family) {
      case Family::Sphere:
        return s * s - x * x;
      case Family::Spheroid: {
        double q = s * s + c * c;
        return s * s / q * (q - x * x);
      }
      case Family::Lemon: {
        double r = std::sqrt(std::max(0.0, alpha * alpha + s * s - x * x));
        double d = r - s;  // s plays the role of p
        return d * d;
      }
      case Family::Cone:
        return s * x;
    }
    return 0;
  }

  // (h_s, h_x); the first slot is h_p for Lemon.
  std::array<double, 2> grad(double s, double x) const {
    require_in_closure(s, x);
    switch (family) {
      case Family::Sphere:
        return {2 * s, -2 * x};
      case Family::Spheroid: {
        double c2 = c * c, s2 = s * s, x2 = x * x;
        double q = s2 + c2;
        double hs = 2 * s * (q * q - c2 * x2) / (q * q);
        double hx = -2 * x * s2 / q;
        return {hs, hx};
      }
      case Family::Lemon: {
        double r = std::sqrt(alpha * alpha + s * s - x * x);
        double hp = 2 * (s / r - 1) * (r - s);
        double hx = -2 * x * (r - s) / r;
        return {hp, hx};
      }
      case Family::Cone:
        return {x, s};
    }
    return {0, 0};
  }

  // d/dx (h_x / h_s), the second-derivative quantity of the Bolker audit.
  double ratio_deriv(double s, double x) const {
    require_in_closure(s, x);
    switch (family) {
      case Family::Sphere:
        return -1.0 / s;  // h_x/h_s = -x/s
      case Family::Spheroid: {
        double c2 = c * c, s2 = s * s, x2 = x * x;
        double den = c2 * c2 - c2 * (x2 - 2 * s2) + s2 * s2;
        double num = c2 * c2 + c2 * (x2 + 2 * s2) + s2 * s2;
        return -s * (s2 + c2) * num / (den * den);
      }
      case Family::Lemon: {
        double r = std::sqrt(alpha * alpha + s * s - x * x);
        double q = s * s + alpha * alpha;
        double d = r - s;
        if (d == 0) throw DomainError("lemon ratio_deriv: boundary point");
        return (q - s * r) / (r * d * d);
      }
      case Family::Cone:
        if (x == 0) throw NumericalError("cone ratio_deriv: h_s = 0 at x = 0");
        return -s / (x * x);
    }
    return 0;
  }
};

// Lemon reparametrization: s = sqrt(alpha^2 + p^2) - p, strictly decreasing.
inline double lemon_s_of_p(double alpha, double p) {
  return std::sqrt(alpha * alpha + p * p) - p;
}
inline double lemon_p_of_s(double alpha, double s) {
  if (!(s > 0)) throw DomainError("lemon_p_of_s: s must be positive");
  return (alpha * alpha - s * s) / (2 * s);
}

// Point on the surface of revolution: y' + sqrt(h(s, x3 - y3)) (cos phi, sin phi)
// in the plane, x3 in the axial slot.
inline std::array<double, 3> surface_point(const ProfileSpec& prof, double s,
                                           double theta, double y3, double phi,
                                           double x3,
                                           const CenterSurface& surf = {}) {
  double root = std::sqrt(std::max(0.0, prof.h(s, x3 - y3)));
  auto y = surf.center(theta, y3);
  return {y[0] + root * std::cos(phi), y[1] + root * std::sin(phi), x3};
}

// Value bundle of the mu / tau factorization at one (s, t).
struct MuValues {
  double mu;     // sqrt(s - t) * tau
  double tau;
  double mu_t;   // d mu / dt  (-inf sentinel possible at t = s)
  double g;      // sqrt(1 + mu_t^2) = kappa / sqrt(s - t); +inf at t = s
  double kappa;  // continuous on the closed triangle, kappa(s,s) = |tau|/2
};

// Symmetric-curve form mu(s,t) = sqrt(s-t) tau(s,t) on the triangle
// T = {a <= t <= s <= b}. Cone has no mu factorization and is excluded.
struct MuSpec {
  Family family = Family::Sphere;
  double c = 0.0;
  double alpha = 0.0;

  static MuSpec sphere() { return {Family::Sphere, 0, 0}; }
  static MuSpec spheroid(double c) {
    if (!(c > 0)) throw ConfigError("spheroid: c must be positive");
    return {Family::Spheroid, c, 0};
  }
  static MuSpec lemon(double alpha) {
    if (!(alpha > 0)) throw ConfigError("lemon: alpha must be positive");
    return {Family::Lemon, 0, alpha};
  }

  static MuSpec from_family(Family f, double c, double alpha) {
    switch (f) {
      case Family::Sphere: return sphere();
      case Family::Spheroid: return spheroid(c);
      case Family::Lemon: return lemon(alpha);
      case Family::Cone: throw ConfigError("cone has no mu factorization");
    }
    throw ConfigError("bad family");
  }

  double tau(double s, double t) const {
    switch (family) {
      case Family::Sphere:
        return std::sqrt(s + t);
      case Family::Spheroid:
        return std::sqrt(1 + (c / s) * (c / s)) * std::sqrt(s + t);
      case Family::Lemon:
        return std::sqrt((s * t + alpha * alpha) / s);
      default:
        throw ConfigError("cone has no mu factorization");
    }
  }

  double tau_t(double s, double t) const {
    switch (family) {
      case Family::Sphere:
        return 0.5 / std::sqrt(s + t);
      case Family::Spheroid:
        return 0.5 * std::sqrt(1 + (c / s) * (c / s)) / std::sqrt(s + t);
      case Family::Lemon:
        return 0.5 / tau(s, t);
      default:
        throw ConfigError("cone has no mu factorization");
    }
  }

  MuValues eval(double s, double t) const {
    if (t > s + 1e-12 * (1 + std::abs(s)))
      throw DomainError("mu: t > s outside triangle");
    if (!(t > 0)) throw DomainError("mu: require t > 0");
    if (t > s) t = s;
    MuValues v{};
    const double d = s - t;
    v.tau = tau(s, t);
    v.mu = std::sqrt(d) * v.tau;
    // kappa = sqrt((s-t) + ((s-t) tau_t - tau/2)^2), continuous up to t = s
    const double tt = tau_t(s, t);
    const double inner = d * tt - 0.5 * v.tau;
    v.kappa = std::sqrt(d + inner * inner);
    if (d > 0) {
      v.mu_t = inner / std::sqrt(d);
      v.g = v.kappa / std::sqrt(d);
    } else {
      v.mu_t = -std::numeric_limits<double>::infinity();
      v.g = std::numeric_limits<double>::infinity();
    }
    return v;
  }

  // kappa(s,s) = |tau(s,s)| / 2, the diagonal kernel value.
  double kappa_diag(double s) const { return 0.5 * std::abs(tau(s, s)); }
};

}  // namespace revrad

#endif
