#ifndef REVRAD_VOLTERRA_HPP
#define REVRAD_VOLTERRA_HPP

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "revrad/core.hpp"
#include "revrad/errors.hpp"
#include "revrad/profiles.hpp"

namespace revrad {

// Discretized weakly singular Volterra operator
//
//   (V u)(s_i) ~ int_a^{s_i} K_xi(s_i, t) / sqrt(s_i - t) u(t) dt,
//   K_xi(s, t) = kappa(s, t) cos(xi mu(s, t)).
//
// Product quadrature: on each cell [t_k, t_{k+1}] the smooth part is frozen
// at the cell midpoint and the 1/sqrt(s_i - t) weight is integrated exactly,
// 2 (sqrt(s_i - t_k) - sqrt(s_i - t_{k+1})). The diagonal cell freezes the
// smooth part at t = s_i, where K_xi(s, s) = |tau(s, s)| / 2, with exact
// weight integral 2 sqrt(dt). Row 0 keeps the diagonal-cell rule so the
// matrix stays invertible; its nominal integration range [a, s_0] is empty.
struct VolterraMatrix {
  Eigen::MatrixXd entries;  // lower triangular, (n_t, n_t)
  double xi = 0.0;
  AxisGrid s_grid;
  MuSpec mu;
};

inline VolterraMatrix volterra_matrix(const MuSpec& mu, double xi,
                                      const AxisGrid& s_grid) {
  if (!(s_grid.lo > 0)) throw ConfigError("volterra_matrix: need s_min > 0");
  const int n = s_grid.n;
  const double dt = s_grid.step();
  VolterraMatrix V{Eigen::MatrixXd::Zero(n, n), xi, s_grid, mu};
  for (int i = 0; i < n; ++i) {
    const double si = s_grid.at(i);
    for (int k = 0; k + 1 < i; ++k) {
      const double tk = s_grid.at(k), tk1 = s_grid.at(k + 1);
      const double w = 2.0 * (std::sqrt(si - tk) - std::sqrt(si - tk1));
      const MuValues mv = mu.eval(si, 0.5 * (tk + tk1));
      const double kmid = mv.kappa * std::cos(xi * mv.mu);
      V.entries(i, k) += 0.5 * w * kmid;
      V.entries(i, k + 1) += 0.5 * w * kmid;
    }
    // Diagonal cell: K at (s_i, s_i), cos term = 1.
    V.entries(i, i) += 2.0 * std::sqrt(dt) * mu.kappa_diag(si);
  }
  return V;
}

// Tikhonov-regularized solve of V x = b via the normal equations
// (V^T V + alpha I) x = V^T b. The factorization is cached so many
// right-hand sides (one per theta) reuse it.
class TikhonovSolver {
 public:
  TikhonovSolver(const VolterraMatrix& V, double alpha) : vt_(V.entries.transpose()) {
    if (alpha < 0) throw ConfigError("tikhonov: alpha must be nonnegative");
    const int n = V.entries.rows();
    if (alpha == 0) {
      double dmin = V.entries.diagonal().cwiseAbs().minCoeff();
      double dmax = V.entries.diagonal().cwiseAbs().maxCoeff();
      if (!(dmin > 1e-14 * dmax))
        throw NumericalError(
            "tikhonov: alpha = 0 with near-singular triangular system, "
            "diagonal ratio " + std::to_string(dmin / dmax));
    }
    Eigen::MatrixXd normal = vt_ * V.entries;
    normal.diagonal().array() += alpha;
    ldlt_.compute(normal);
    if (ldlt_.info() != Eigen::Success)
      throw NumericalError("tikhonov: normal-equation factorization failed");
  }

  Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const {
    Eigen::VectorXd re = ldlt_.solve((vt_ * rhs.real()).eval());
    Eigen::VectorXd im = ldlt_.solve((vt_ * rhs.imag()).eval());
    return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    return ldlt_.solve((vt_ * rhs).eval());
  }

 private:
  Eigen::MatrixXd vt_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
};

inline Eigen::VectorXcd tikhonov_solve(const VolterraMatrix& V,
                                       const Eigen::VectorXcd& rhs,
                                       double alpha) {
  return TikhonovSolver(V, alpha).solve(rhs);
}

// Spectral condition number via singular values; +inf when singular.
inline double condition_number(const VolterraMatrix& V) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V.entries);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1), smax = sv(0);
  if (smin <= 0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace revrad

#endif
