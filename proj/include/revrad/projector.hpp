#ifndef REVRAD_PROJECTOR_HPP
#define REVRAD_PROJECTOR_HPP

#include <cmath>
#include <vector>

#include "revrad/circular_mean.hpp"
#include "revrad/core.hpp"
#include "revrad/errors.hpp"
#include "revrad/fourier.hpp"
#include "revrad/profiles.hpp"
#include "revrad/volterra.hpp"

namespace revrad {

struct SinoGrids {
  AxisGrid s;
  int n_theta = 0;
  AxisGrid y3;
};

namespace detail {

// y3 grid must extend the volume z grid: same spacing, symmetric about 0,
// superset range. Returns the index offset of the volume z origin.
inline int axial_embed_offset(const Volume& vol, const AxisGrid& y3) {
  const double dz = vol.spacing();
  if (std::abs(y3.step() - dz) > 1e-12 * dz)
    throw ConfigError("sinogram y3 spacing must match the volume z spacing");
  const double off = (-vol.extent - y3.lo) / dz;
  const int k0 = static_cast<int>(std::lround(off));
  if (std::abs(off - k0) > 1e-9 || k0 < 0 || k0 + vol.n > y3.n)
    throw ConfigError("volume z grid is not aligned inside the y3 grid");
  return k0;
}

inline double max_profile_height(const MuSpec& mu, const AxisGrid& s_grid) {
  return mu.eval(s_grid.hi, s_grid.lo).mu;
}

inline void check_support_margin(const Volume& vol, double s_min,
                                 const CenterSurface& surf) {
  const AxisGrid g = vol.grid();
  for (int i = 0; i < vol.n; ++i)
    for (int j = 0; j < vol.n; ++j)
      for (int k = 0; k < vol.n; ++k)
        if (vol.at(i, j, k) != 0.0 &&
            surf.distance(g.at(i), g.at(j), g.at(k)) < s_min)
          throw PreconditionError(
              "support margin violated: nonzero voxel (" + std::to_string(i) +
              "," + std::to_string(j) + "," + std::to_string(k) +
              ") lies within distance " + std::to_string(s_min) +
              " of the cylinder");
}

}  // namespace detail

// Spectral sinogram of a volume through the factored model: axial DFT,
// circular means per frequency slice, then the per-frequency Volterra
// operator. The mirror symmetry of the surfaces (the +-mu branches)
// contributes the factor 2 alongside the cosine kernel.
inline SpectralSinogram forward_project_spectral(const Volume& vol,
                                                 const MuSpec& mu,
                                                 const SinoGrids& grids,
                                                 const CenterSurface& surf = {}) {
  const int k0 = detail::axial_embed_offset(vol, grids.y3);
  detail::check_support_margin(vol, grids.s.lo, surf);
  const double height = detail::max_profile_height(mu, grids.s);
  if (grids.y3.hi < vol.extent + height - 1e-9)
    throw PreconditionError(
        "y3 extent " + std::to_string(grids.y3.hi) +
        " too small: need support half-width + max profile height = " +
        std::to_string(vol.extent + height));

  const int n = vol.n, ny = grids.y3.n;
  SpectralSinogram spec(grids.s, grids.n_theta, ny, grids.y3.step());
  CircularMeanOp M(vol.grid(), grids.s, grids.n_theta, surf.radius);

  // Axial DFT on the embedded grid, (x1, x2) lines in place.
  std::vector<ComplexGrid2> slices(ny, ComplexGrid2::Zero(n, n));
  {
    std::vector<Complex> line(ny);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::fill(line.begin(), line.end(), Complex(0, 0));
        for (int k = 0; k < n; ++k) line[k0 + k] = Complex(vol.at(i, j, k), 0);
        fft_1d(line, false);
        for (int k = 0; k < ny; ++k) slices[k](i, j) = line[k];
      }
  }

  // Hermitian symmetry of real data: process xi_k for k <= ny/2, mirror rest.
  const int half = ny / 2;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k <= half; ++k) {
    const double xi = spec.xi(k);
    const VolterraMatrix V = volterra_matrix(mu, xi, grids.s);
    const ComplexGrid2 m = M.forward(slices[k]);
    for (int j = 0; j < grids.n_theta; ++j) {
      Eigen::VectorXcd col = m.col(j).matrix();
      Eigen::VectorXcd d = 2.0 * (V.entries * col);
      for (int i = 0; i < grids.s.n; ++i) spec.at(i, j, k) = d(i);
    }
  }
  for (int k = half + 1; k < ny; ++k)
    for (int i = 0; i < grids.s.n; ++i)
      for (int j = 0; j < grids.n_theta; ++j)
        spec.at(i, j, k) = std::conj(spec.at(i, j, ny - k));
  return spec;
}

// Real-space sinogram through the factored model Rf = F3^-1 V M F3 f.
inline Sinogram forward_project(const Volume& vol, const MuSpec& mu,
                                const SinoGrids& grids,
                                const CenterSurface& surf = {},
                                double* imag_residual = nullptr) {
  SpectralSinogram spec = forward_project_spectral(vol, mu, grids, surf);
  Sinogram sino(grids.s, grids.n_theta, grids.y3);
  const int ny = grids.y3.n;
  std::vector<Complex> line(ny);
  double rn2 = 0, in2 = 0;
  for (int i = 0; i < grids.s.n; ++i)
    for (int j = 0; j < grids.n_theta; ++j) {
      for (int k = 0; k < ny; ++k) line[k] = spec.at(i, j, k);
      fft_1d(line, true);
      for (int k = 0; k < ny; ++k) {
        sino.at(i, j, k) = line[k].real();
        rn2 += line[k].real() * line[k].real();
        in2 += line[k].imag() * line[k].imag();
      }
    }
  if (imag_residual) *imag_residual = rn2 > 0 ? std::sqrt(in2 / rn2) : 0.0;
  return sino;
}

// Brute-force surface-integral oracle: 2-D quadrature over (x, phi) of
//
//   Rf(s, y) = int int sqrt(h + h_x^2/4) f(sqrt(h) Theta + y', y3 + x) dphi dx
//
// with trilinear interpolation of f. For lemons the sinogram radius s is
// mapped to the arc parameter p before evaluating h.
inline Sinogram forward_project_direct(const Volume& vol,
                                       const ProfileSpec& profile,
                                       const SinoGrids& grids,
                                       const CenterSurface& surf = {},
                                       int n_x = 192) {
  detail::check_support_margin(vol, grids.s.lo, surf);
  Sinogram sino(grids.s, grids.n_theta, grids.y3);
  const double L = vol.extent;
  const double dx_grid = vol.spacing();
  const double bound_r = std::sqrt(2.0) * L;  // circumscribed radius of [-L,L]^2

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < grids.s.n; ++i) {
    double s = grids.s.at(i);
    if (profile.family == Family::Lemon) s = lemon_p_of_s(profile.alpha, s);
    const Interval dom = profile.x_domain(s);
    const double width = dom.hi - dom.lo;
    const double dxq = width / n_x;
    for (int j = 0; j < grids.n_theta; ++j) {
      const double th = sino.theta(j);
      const double cx = surf.radius * std::cos(th);
      const double cy = surf.radius * std::sin(th);
      for (int m = 0; m < n_x; ++m) {
        const double x = dom.lo + (m + 0.5) * dxq;
        const double h = profile.h(s, x);
        const double r = std::sqrt(std::max(0.0, h));
        // circle at radius r about |y'| = 1 never meets the volume?
        if (std::abs(surf.radius - r) > bound_r + dx_grid) continue;
        const auto g = profile.grad(s, x);
        const double w = std::sqrt(std::max(0.0, h + 0.25 * g[1] * g[1])) * dxq;
        const int np = std::max(64, static_cast<int>(std::ceil(2 * kPi * r / dx_grid)));
        const double dphi = 2.0 * kPi / np;
        for (int k = 0; k < grids.y3.n; ++k) {
          const double z = grids.y3.at(k) + x;
          if (z < -L - dx_grid || z > L + dx_grid) continue;
          double acc = 0;
          for (int q = 0; q < np; ++q) {
            const double phi = dphi * q;
            acc += trilinear_sample(vol, cx + r * std::cos(phi),
                                    cy + r * std::sin(phi), z);
          }
          if (acc != 0) sino.at(i, j, k) += w * dphi * acc;
        }
      }
    }
  }
  return sino;
}

// Cone transform: Rf(s, y) = sqrt(1+s^2) int_0^inf t int f(t Theta + y', y3 - s t).
inline Sinogram cone_forward(const Volume& vol, const SinoGrids& grids,
                             const CenterSurface& surf = {}) {
  Sinogram sino(grids.s, grids.n_theta, grids.y3);
  const double L = vol.extent;
  const double dx_grid = vol.spacing();
  const double t_max = surf.radius + std::sqrt(2.0) * L + dx_grid;
  const double dtq = 0.5 * dx_grid;
  const int nt = static_cast<int>(std::ceil(t_max / dtq));

#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < grids.n_theta; ++j) {
    const double th = sino.theta(j);
    const double cx = surf.radius * std::cos(th);
    const double cy = surf.radius * std::sin(th);
    for (int i = 0; i < grids.s.n; ++i) {
      const double s = grids.s.at(i);
      const double slope = std::sqrt(1.0 + s * s);
      for (int m = 0; m < nt; ++m) {
        const double t = (m + 0.5) * dtq;
        const int np = std::max(64, static_cast<int>(std::ceil(2 * kPi * t / dx_grid)));
        const double dphi = 2.0 * kPi / np;
        for (int k = 0; k < grids.y3.n; ++k) {
          const double z = grids.y3.at(k) - s * t;
          if (z < -L - dx_grid || z > L + dx_grid) continue;
          double acc = 0;
          for (int q = 0; q < np; ++q) {
            const double phi = dphi * q;
            acc += trilinear_sample(vol, cx + t * std::cos(phi),
                                    cy + t * std::sin(phi), z);
          }
          if (acc != 0) sino.at(i, j, k) += slope * t * dtq * dphi * acc;
        }
      }
    }
  }
  return sino;
}

// Fourier-slice recovery of circular means from cone data at one frequency:
//
//   M f_xi(t, y') = |xi|/(2 pi) int w(s) R^f(s, y', xi)/sqrt(1+s^2) e^{i s xi t} ds
//
// discretized with a Hann window w on the cone-slope range. xi = 0 is
// excluded (the change of variables degenerates there).
inline ComplexGrid2 cone_slice_recover(const SpectralSinogram& spec, int xi_index,
                                       const AxisGrid& t_grid) {
  const double xi = spec.xi(xi_index);
  if (xi == 0.0)
    throw NumericalError("cone_slice_recover: xi = 0 is excluded");
  const AxisGrid& s = spec.s_grid;
  const double s_half = std::max(std::abs(s.lo), std::abs(s.hi));
  const double ds = s.step();
  ComplexGrid2 out = ComplexGrid2::Zero(t_grid.n, spec.n_theta);
  for (int j = 0; j < spec.n_theta; ++j)
    for (int it = 0; it < t_grid.n; ++it) {
      const double t = t_grid.at(it);
      Complex acc(0, 0);
      for (int i = 0; i < s.n; ++i) {
        const double sv = s.at(i);
        const double hann = 0.5 * (1.0 + std::cos(kPi * sv / s_half));
        acc += hann * spec.at(i, j, xi_index) / std::sqrt(1.0 + sv * sv) *
               std::exp(Complex(0, sv * xi * t));
      }
      out(it, j) = acc * (std::abs(xi) * ds / (2.0 * kPi));
    }
  return out;
}

}  // namespace revrad

#endif
