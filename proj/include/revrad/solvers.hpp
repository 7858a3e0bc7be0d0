#ifndef REVRAD_SOLVERS_HPP
#define REVRAD_SOLVERS_HPP

#include <cmath>

#include "revrad/circular_mean.hpp"
#include "revrad/core.hpp"
#include "revrad/errors.hpp"

namespace revrad {

struct LandweberConfig {
  int iterations = 200;
  double relaxation = 0.0;  // 0: choose 1/||M||^2 from the norm estimate
};

struct CglsTvConfig {
  int cg_iterations = 30;
  double tv_weight = 0.0;       // beta
  int denoise_interval = 5;
  int tv_inner_iterations = 20;
};

namespace detail {

inline double cnorm(const ComplexGrid2& a) { return std::sqrt(a.abs2().sum()); }

inline double cdot_real(const ComplexGrid2& a, const ComplexGrid2& b) {
  return (a.conjugate() * b).sum().real();
}

}  // namespace detail

// Landweber iteration x <- x + lambda M^T (b - M x) from x = 0. The residual
// must be non-increasing for a valid step size; two consecutive increases
// abort with a step-size error.
inline ComplexGrid2 landweber(const CircularMeanOp& M, const ComplexGrid2& data,
                              const LandweberConfig& cfg,
                              double norm_estimate) {
  double lambda = cfg.relaxation;
  const double limit = 2.0 / (norm_estimate * norm_estimate);
  if (lambda == 0.0) lambda = 0.5 * limit;  // 1/||M||^2
  if (!(lambda > 0) || lambda >= limit)
    throw ConfigError("landweber: relaxation must lie in (0, 2/||M||^2)");
  if (cfg.iterations < 1) throw ConfigError("landweber: iterations >= 1");

  ComplexGrid2 x = ComplexGrid2::Zero(M.slice_grid.n, M.slice_grid.n);
  double prev = std::numeric_limits<double>::infinity();
  int rising = 0;
  for (int it = 0; it < cfg.iterations; ++it) {
    ComplexGrid2 r = data - M.forward(x);
    const double rn = detail::cnorm(r);
    if (rn > prev * (1 + 1e-12)) {
      if (++rising >= 2)
        throw NumericalError("landweber: residual grew twice, step too large");
    } else {
      rising = 0;
    }
    prev = rn;
    x += lambda * M.adjoint(r);
  }
  return x;
}

// One Chambolle dual-projection TV denoise of a real plane:
// min_u ||u - f||^2/2 + beta TV(u).
inline RealGrid2 tv_denoise(const RealGrid2& f, double beta, int iterations) {
  if (beta <= 0 || iterations < 1) return f;
  const int n1 = f.rows(), n2 = f.cols();
  RealGrid2 p1 = RealGrid2::Zero(n1, n2), p2 = RealGrid2::Zero(n1, n2);
  RealGrid2 div = RealGrid2::Zero(n1, n2);
  const double tau = 0.25;
  for (int it = 0; it < iterations; ++it) {
    // div p, backward differences with Neumann boundary
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) {
        double d = p1(i, j) + p2(i, j);
        if (i > 0) d -= p1(i - 1, j);
        if (j > 0) d -= p2(i, j - 1);
        div(i, j) = d;
      }
    // gradient of (div p - f/beta), forward differences
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) {
        const double c = div(i, j) - f(i, j) / beta;
        const double gx = (i + 1 < n1) ? (div(i + 1, j) - f(i + 1, j) / beta) - c : 0;
        const double gy = (j + 1 < n2) ? (div(i, j + 1) - f(i, j + 1) / beta) - c : 0;
        const double denom = 1.0 + tau * std::sqrt(gx * gx + gy * gy);
        p1(i, j) = (p1(i, j) + tau * gx) / denom;
        p2(i, j) = (p2(i, j) + tau * gy) / denom;
      }
  }
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      double d = p1(i, j) + p2(i, j);
      if (i > 0) d -= p1(i - 1, j);
      if (j > 0) d -= p2(i, j - 1);
      div(i, j) = d;
    }
  return f - beta * div;
}

// Complex field: real and imaginary parts denoised independently.
inline ComplexGrid2 tv_denoise(const ComplexGrid2& f, double beta, int iterations) {
  if (beta <= 0 || iterations < 1) return f;
  RealGrid2 re = tv_denoise(f.real().eval(), beta, iterations);
  RealGrid2 im = tv_denoise(f.imag().eval(), beta, iterations);
  return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
}

// Isotropic discrete total variation of a plane (magnitude of the forward-
// difference gradient, summed).
inline double total_variation(const RealGrid2& f) {
  double tv = 0;
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j) {
      const double gx = (i + 1 < f.rows()) ? f(i + 1, j) - f(i, j) : 0;
      const double gy = (j + 1 < f.cols()) ? f(i, j + 1) - f(i, j) : 0;
      tv += std::sqrt(gx * gx + gy * gy);
    }
  return tv;
}

// CGLS on ||M x - b||^2, interleaved with TV denoising: every
// denoise_interval iterations the iterate is denoised and CG restarts
// from it. With tv_weight = 0 or an interval past the iteration budget
// this is plain CGLS.
inline ComplexGrid2 cgls_tv(const CircularMeanOp& M, const ComplexGrid2& data,
                            const CglsTvConfig& cfg) {
  if (cfg.cg_iterations < 1) throw ConfigError("cgls_tv: cg_iterations >= 1");
  ComplexGrid2 x = ComplexGrid2::Zero(M.slice_grid.n, M.slice_grid.n);

  int done = 0;
  while (done < cfg.cg_iterations) {
    int burst = cfg.cg_iterations - done;
    if (cfg.tv_weight > 0 && cfg.denoise_interval >= 1)
      burst = std::min(burst, cfg.denoise_interval);

    // CGLS restart from the current iterate.
    ComplexGrid2 r = data - M.forward(x);
    ComplexGrid2 g = M.adjoint(r);
    ComplexGrid2 p = g;
    double gamma = g.abs2().sum();
    for (int it = 0; it < burst && gamma > 0; ++it) {
      ComplexGrid2 q = M.forward(p);
      const double qq = q.abs2().sum();
      if (qq == 0) break;
      const double a = gamma / qq;
      x += a * p;
      r -= a * q;
      g = M.adjoint(r);
      const double gamma_new = g.abs2().sum();
      p = g + (gamma_new / gamma) * p;
      gamma = gamma_new;
    }
    done += burst;
    if (cfg.tv_weight > 0 && cfg.denoise_interval >= 1 && done < cfg.cg_iterations)
      x = tv_denoise(x, cfg.tv_weight, cfg.tv_inner_iterations);
  }
  if (cfg.tv_weight > 0 && cfg.denoise_interval >= 1)
    x = tv_denoise(x, cfg.tv_weight, cfg.tv_inner_iterations);
  return x;
}

}  // namespace revrad

#endif
