#ifndef REVRAD_CIRCULAR_MEAN_HPP
#define REVRAD_CIRCULAR_MEAN_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "revrad/core.hpp"
#include "revrad/errors.hpp"

namespace revrad {

// Weighted circular means of a planar field: for each radius t_i and center
// angle theta_j on the unit circle,
//
//   M f(t_i, theta_j) = t_i * sum_phi f(y'_j + t_i (cos phi, sin phi)) * dphi
//
// with bilinear interpolation of f on the slice grid and samples outside the
// grid reading zero. The adjoint is the exact transpose of the discretized
// forward map, interpolation weights and t*dphi factors included.
struct CircularMeanOp {
  AxisGrid slice_grid;  // shared x1/x2 grid
  AxisGrid t_grid;
  int n_theta = 0;
  double center_radius = 1.0;

  CircularMeanOp(const AxisGrid& slice, const AxisGrid& t, int ntheta,
                 double radius = 1.0)
      : slice_grid(slice), t_grid(t), n_theta(ntheta), center_radius(radius) {
    if (ntheta < 1) throw ConfigError("CircularMeanOp: n_theta >= 1");
    if (!(t.lo > 0)) throw ConfigError("CircularMeanOp: radii must be positive");
  }

  // rounded up to a multiple of 4 so quarter-turn symmetry is exact
  int n_phi(double t) const {
    int by_arc = static_cast<int>(std::ceil(2.0 * kPi * t / slice_grid.step()));
    return (std::max(64, by_arc) + 3) / 4 * 4;
  }

  // slice (n, n) -> data (n_t, n_theta)
  ComplexGrid2 forward(const ComplexGrid2& slice) const {
    if (slice.rows() != slice_grid.n || slice.cols() != slice_grid.n)
      throw ConfigError("CircularMeanOp::forward: slice shape mismatch");
    ComplexGrid2 out = ComplexGrid2::Zero(t_grid.n, n_theta);
    for (int i = 0; i < t_grid.n; ++i) {
      const double t = t_grid.at(i);
      const int np = n_phi(t);
      const double dphi = 2.0 * kPi / np;
      for (int j = 0; j < n_theta; ++j) {
        const double th = 2.0 * kPi * j / n_theta;
        const double cx = center_radius * std::cos(th);
        const double cy = center_radius * std::sin(th);
        Complex acc(0, 0);
        for (int m = 0; m < np; ++m) {
          const double phi = dphi * m;
          acc += bilinear_sample(slice, slice_grid, cx + t * std::cos(phi),
                                 cy + t * std::sin(phi));
        }
        out(i, j) = acc * (t * dphi);
      }
    }
    return out;
  }

  // data (n_t, n_theta) -> slice (n, n); transpose of forward.
  ComplexGrid2 adjoint(const ComplexGrid2& data) const {
    if (data.rows() != t_grid.n || data.cols() != n_theta)
      throw ConfigError("CircularMeanOp::adjoint: data shape mismatch");
    ComplexGrid2 out = ComplexGrid2::Zero(slice_grid.n, slice_grid.n);
    const AxisGrid& g = slice_grid;
    const double inv = 1.0 / g.step();
    for (int i = 0; i < t_grid.n; ++i) {
      const double t = t_grid.at(i);
      const int np = n_phi(t);
      const double dphi = 2.0 * kPi / np;
      for (int j = 0; j < n_theta; ++j) {
        const Complex w = data(i, j) * (t * dphi);
        if (w == Complex(0, 0)) continue;
        const double th = 2.0 * kPi * j / n_theta;
        const double cx = center_radius * std::cos(th);
        const double cy = center_radius * std::sin(th);
        for (int m = 0; m < np; ++m) {
          const double phi = dphi * m;
          const double u = (cx + t * std::cos(phi) - g.lo) * inv;
          const double v = (cy + t * std::sin(phi) - g.lo) * inv;
          const int i0 = static_cast<int>(std::floor(u));
          const int j0 = static_cast<int>(std::floor(v));
          if (i0 < 0 || j0 < 0 || i0 + 1 >= g.n || j0 + 1 >= g.n) continue;
          const double fu = u - i0, fv = v - j0;
          out(i0, j0) += w * ((1 - fu) * (1 - fv));
          out(i0 + 1, j0) += w * (fu * (1 - fv));
          out(i0, j0 + 1) += w * ((1 - fu) * fv);
          out(i0 + 1, j0 + 1) += w * (fu * fv);
        }
      }
    }
    return out;
  }

  // Power-method estimate of the spectral norm ||M||.
  double norm_estimate(int iterations = 20, uint64_t seed = 0x5eed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ComplexGrid2 x(slice_grid.n, slice_grid.n);
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j) x(i, j) = Complex(unif(rng), 0);
    double lambda = 0;
    for (int it = 0; it < iterations; ++it) {
      ComplexGrid2 y = adjoint(forward(x));
      double nrm = std::sqrt(y.abs2().sum());
      if (nrm == 0) return 0;
      lambda = nrm;  // Rayleigh-type estimate of ||M^T M||
      x = y / nrm;
    }
    return std::sqrt(lambda);
  }
};

}  // namespace revrad

#endif
