#ifndef REVRAD_RECONSTRUCT_HPP
#define REVRAD_RECONSTRUCT_HPP

#include <cmath>
#include <variant>
#include <vector>

#include "revrad/circular_mean.hpp"
#include "revrad/core.hpp"
#include "revrad/errors.hpp"
#include "revrad/fourier.hpp"
#include "revrad/profiles.hpp"
#include "revrad/projector.hpp"
#include "revrad/solvers.hpp"
#include "revrad/volterra.hpp"

namespace revrad {

struct InversionConfig {
  double volterra_alpha = 1e-4;
  std::variant<LandweberConfig, CglsTvConfig> m_solver = CglsTvConfig{};
};

struct ReconstructionDiagnostics {
  double imag_residual = 0.0;  // discarded imaginary norm / volume norm
};

// Inverts the factored model: axial DFT over y3, per-frequency Tikhonov
// solve of the Volterra system (per theta column), per-frequency inversion
// of the circular-mean operator, inverse axial DFT, real part.
inline Volume reconstruct(const Sinogram& sino, const MuSpec& mu,
                          const InversionConfig& cfg, int vol_n,
                          double vol_extent, const CenterSurface& surf = {},
                          ReconstructionDiagnostics* diag = nullptr) {
  Volume target(vol_n, vol_extent);
  const int k0 = detail::axial_embed_offset(target, sino.y_grid);
  if (sino.s_grid.n < 2) throw ConfigError("reconstruct: degenerate s grid");

  const int ny = sino.y_grid.n;
  const int ns = sino.s_grid.n;
  const int nth = sino.n_theta;

  // Axial DFT of the data.
  std::vector<ComplexGrid2> dhat(ny, ComplexGrid2::Zero(ns, nth));
  {
    std::vector<Complex> line(ny);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < nth; ++j) {
        for (int k = 0; k < ny; ++k) line[k] = Complex(sino.at(i, j, k), 0);
        fft_1d(line, false);
        for (int k = 0; k < ny; ++k) dhat[k](i, j) = line[k];
      }
  }

  CircularMeanOp M(target.grid(), sino.s_grid, nth, surf.radius);
  const double m_norm = M.norm_estimate();

  // Real data: slices at -xi are conjugates of slices at +xi.
  const int half = ny / 2;
  std::vector<ComplexGrid2> fhat(ny);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k <= half; ++k) {
    const double xi = fft_xi(k, ny, sino.y_grid.step());
    const VolterraMatrix V = volterra_matrix(mu, xi, sino.s_grid);
    const TikhonovSolver tik(V, cfg.volterra_alpha);
    ComplexGrid2 mdata(ns, nth);
    for (int j = 0; j < nth; ++j) {
      Eigen::VectorXcd rhs = 0.5 * dhat[k].col(j).matrix();  // mirror factor
      mdata.col(j) = tik.solve(rhs).array();
    }
    if (std::holds_alternative<LandweberConfig>(cfg.m_solver))
      fhat[k] = landweber(M, mdata, std::get<LandweberConfig>(cfg.m_solver), m_norm);
    else
      fhat[k] = cgls_tv(M, mdata, std::get<CglsTvConfig>(cfg.m_solver));
  }
  for (int k = half + 1; k < ny; ++k) fhat[k] = fhat[ny - k].conjugate();

  // Inverse axial DFT, crop to the volume z range, take the real part.
  std::vector<Complex> line(ny);
  double rn2 = 0, in2 = 0;
  for (int i = 0; i < vol_n; ++i)
    for (int j = 0; j < vol_n; ++j) {
      for (int k = 0; k < ny; ++k) line[k] = fhat[k](i, j);
      fft_1d(line, true);
      for (int k = 0; k < vol_n; ++k) {
        const Complex v = line[k0 + k];
        target.at(i, j, k) = v.real();
        rn2 += v.real() * v.real();
        in2 += v.imag() * v.imag();
      }
    }
  if (diag) diag->imag_residual = rn2 > 0 ? std::sqrt(in2 / rn2) : 0.0;
  return target;
}

}  // namespace revrad

#endif
