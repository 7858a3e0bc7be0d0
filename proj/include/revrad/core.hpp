#ifndef REVRAD_CORE_HPP
#define REVRAD_CORE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "revrad/errors.hpp"

namespace revrad {

using Complex = std::complex<double>;
using ComplexGrid2 = Eigen::ArrayXXcd;  // (rows, cols) dense complex plane
using RealGrid2 = Eigen::ArrayXXd;

constexpr double kPi = 3.14159265358979323846;

// Uniform grid with inclusive endpoints: x_i = lo + i*step, i = 0..n-1.
struct AxisGrid {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;

  AxisGrid() = default;
  AxisGrid(double lo_, double hi_, int n_) : lo(lo_), hi(hi_), n(n_) {
    if (n < 2 || !(hi > lo)) throw ConfigError("AxisGrid: need n >= 2 and hi > lo");
  }

  double step() const { return (hi - lo) / (n - 1); }
  double at(int i) const { return lo + i * step(); }
  int size() const { return n; }

  // Nearest grid index, clamped to range.
  int nearest(double x) const {
    int i = static_cast<int>(std::lround((x - lo) / step()));
    if (i < 0) i = 0;
    if (i >= n) i = n - 1;
    return i;
  }

  bool contains(double x) const { return x >= lo && x <= hi; }

  bool operator==(const AxisGrid& o) const {
    return lo == o.lo && hi == o.hi && n == o.n;
  }
};

// Symmetric grid about 0 with given spacing: +-n_half*step, odd point count.
inline AxisGrid symmetric_grid(double half_extent, double step) {
  int n_half = static_cast<int>(std::floor(half_extent / step + 1e-9));
  if (n_half < 1) throw ConfigError("symmetric_grid: extent below one step");
  return AxisGrid(-n_half * step, n_half * step, 2 * n_half + 1);
}

// Real scalar field on an N x N x N cube [-L,L]^3, voxel centers uniform.
// C-order storage: index (i1,i2,i3) -> (i1*N + i2)*N + i3, axes (x1,x2,x3).
struct Volume {
  int n = 0;
  double extent = 0.0;        // half-width L
  double support_margin = 0.0;  // declared min distance of supp(f) from S
  std::vector<double> values;

  Volume() = default;
  Volume(int n_, double extent_, double margin = 0.0)
      : n(n_), extent(extent_), support_margin(margin),
        values(static_cast<size_t>(n_) * n_ * n_, 0.0) {
    if (n < 3 || n % 2 == 0) throw ConfigError("Volume: N must be odd and >= 3");
    if (!(extent > 0)) throw ConfigError("Volume: extent must be positive");
  }

  AxisGrid grid() const { return AxisGrid(-extent, extent, n); }
  double spacing() const { return 2.0 * extent / (n - 1); }

  double& at(int i, int j, int k) {
    return values[(static_cast<size_t>(i) * n + j) * n + k];
  }
  double at(int i, int j, int k) const {
    return values[(static_cast<size_t>(i) * n + j) * n + k];
  }

  double norm2() const {
    double s = 0;
    for (double v : values) s += v * v;
    return std::sqrt(s);
  }
};

// Real data cube over (s_i, theta_j, y3_k). theta_j = 2*pi*j / n_theta.
struct Sinogram {
  AxisGrid s_grid;
  int n_theta = 0;
  AxisGrid y_grid;
  std::vector<double> values;  // C order (s, theta, y3)

  Sinogram() = default;
  Sinogram(const AxisGrid& s, int ntheta, const AxisGrid& y)
      : s_grid(s), n_theta(ntheta), y_grid(y),
        values(static_cast<size_t>(s.n) * ntheta * y.n, 0.0) {
    if (ntheta < 1) throw ConfigError("Sinogram: n_theta must be positive");
  }

  double theta(int j) const { return 2.0 * kPi * j / n_theta; }

  double& at(int i, int j, int k) {
    return values[(static_cast<size_t>(i) * n_theta + j) * y_grid.n + k];
  }
  double at(int i, int j, int k) const {
    return values[(static_cast<size_t>(i) * n_theta + j) * y_grid.n + k];
  }

  double norm2() const {
    double s = 0;
    for (double v : values) s += v * v;
    return std::sqrt(s);
  }
};

// Complex data cube over (s_i, theta_j, xi_k); xi grid dual to a y3 grid.
struct SpectralSinogram {
  AxisGrid s_grid;
  int n_theta = 0;
  int n_xi = 0;
  double y_step = 0.0;  // spacing of the originating y3 grid
  std::vector<Complex> values;  // C order (s, theta, xi), FFT frequency order

  SpectralSinogram() = default;
  SpectralSinogram(const AxisGrid& s, int ntheta, int nxi, double ystep)
      : s_grid(s), n_theta(ntheta), n_xi(nxi), y_step(ystep),
        values(static_cast<size_t>(s.n) * ntheta * nxi, Complex(0, 0)) {}

  // Angular frequency of FFT bin k (k = 0..n_xi-1, wrap-around order).
  double xi(int k) const {
    int kk = (k <= n_xi / 2) ? k : k - n_xi;
    return 2.0 * kPi * kk / (n_xi * y_step);
  }

  Complex& at(int i, int j, int k) {
    return values[(static_cast<size_t>(i) * n_theta + j) * n_xi + k];
  }
  Complex at(int i, int j, int k) const {
    return values[(static_cast<size_t>(i) * n_theta + j) * n_xi + k];
  }
};

// One axial-frequency slice of a volume: complex field over (x1, x2).
struct SpectralSlice {
  double xi = 0.0;
  AxisGrid grid;      // shared x1/x2 grid
  ComplexGrid2 values;  // (n, n), row = x1 index

  SpectralSlice() = default;
  SpectralSlice(double xi_, const AxisGrid& g)
      : xi(xi_), grid(g), values(ComplexGrid2::Zero(g.n, g.n)) {}
};

// Bilinear sample of a complex plane; points whose 2x2 stencil is not fully
// inside the grid read as zero (compact support convention).
inline Complex bilinear_sample(const ComplexGrid2& v, const AxisGrid& g,
                               double x, double y) {
  const double inv = 1.0 / g.step();
  const double u = (x - g.lo) * inv;
  const double w = (y - g.lo) * inv;
  const int i0 = static_cast<int>(std::floor(u));
  const int j0 = static_cast<int>(std::floor(w));
  if (i0 < 0 || j0 < 0 || i0 + 1 >= g.n || j0 + 1 >= g.n) return Complex(0, 0);
  const double fu = u - i0, fw = w - j0;
  return (1 - fu) * (1 - fw) * v(i0, j0) + fu * (1 - fw) * v(i0 + 1, j0) +
         (1 - fu) * fw * v(i0, j0 + 1) + fu * fw * v(i0 + 1, j0 + 1);
}

// Trilinear sample of a volume, zero outside.
inline double trilinear_sample(const Volume& vol, double x, double y, double z) {
  const AxisGrid g = vol.grid();
  const double inv = 1.0 / g.step();
  const double u = (x - g.lo) * inv;
  const double v = (y - g.lo) * inv;
  const double w = (z - g.lo) * inv;
  const int i0 = static_cast<int>(std::floor(u));
  const int j0 = static_cast<int>(std::floor(v));
  const int k0 = static_cast<int>(std::floor(w));
  if (i0 < 0 || j0 < 0 || k0 < 0 || i0 + 1 >= g.n || j0 + 1 >= g.n ||
      k0 + 1 >= g.n)
    return 0.0;
  const double fu = u - i0, fv = v - j0, fw = w - k0;
  double c00 = vol.at(i0, j0, k0) * (1 - fu) + vol.at(i0 + 1, j0, k0) * fu;
  double c10 = vol.at(i0, j0 + 1, k0) * (1 - fu) + vol.at(i0 + 1, j0 + 1, k0) * fu;
  double c01 = vol.at(i0, j0, k0 + 1) * (1 - fu) + vol.at(i0 + 1, j0, k0 + 1) * fu;
  double c11 =
      vol.at(i0, j0 + 1, k0 + 1) * (1 - fu) + vol.at(i0 + 1, j0 + 1, k0 + 1) * fu;
  return (c00 * (1 - fv) + c10 * fv) * (1 - fw) + (c01 * (1 - fv) + c11 * fv) * fw;
}

}  // namespace revrad

#endif
