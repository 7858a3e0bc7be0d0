#ifndef REVRAD_BOLKER_HPP
#define REVRAD_BOLKER_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "revrad/core.hpp"
#include "revrad/errors.hpp"
#include "revrad/profiles.hpp"

namespace revrad {

// Profile given only as a table of h samples; derivatives come from central
// differences of the bilinear interpolant. Escape hatch for auditing an h
// with no closed form.
struct TabulatedProfile {
  AxisGrid s_grid;
  AxisGrid x_grid;
  RealGrid2 values;  // (s index, x index)

  template <class F>
  static TabulatedProfile sample(F&& f, const AxisGrid& s, const AxisGrid& x) {
    TabulatedProfile t;
    t.s_grid = s;
    t.x_grid = x;
    t.values = RealGrid2::Zero(s.n, x.n);
    for (int i = 0; i < s.n; ++i)
      for (int j = 0; j < x.n; ++j) t.values(i, j) = f(s.at(i), x.at(j));
    return t;
  }

  Interval x_domain(double) const { return {x_grid.lo, x_grid.hi}; }
  bool bounded_above() const { return true; }

  double h(double s, double x) const {
    const double u = (s - s_grid.lo) / s_grid.step();
    const double v = (x - x_grid.lo) / x_grid.step();
    int i0 = std::clamp(static_cast<int>(std::floor(u)), 0, s_grid.n - 2);
    int j0 = std::clamp(static_cast<int>(std::floor(v)), 0, x_grid.n - 2);
    double fu = std::clamp(u - i0, 0.0, 1.0), fv = std::clamp(v - j0, 0.0, 1.0);
    return (1 - fu) * (1 - fv) * values(i0, j0) + fu * (1 - fv) * values(i0 + 1, j0) +
           (1 - fu) * fv * values(i0, j0 + 1) + fu * fv * values(i0 + 1, j0 + 1);
  }

  std::array<double, 2> grad(double s, double x) const {
    const double ds = s_grid.step(), dx = x_grid.step();
    return {(h(s + ds, x) - h(s - ds, x)) / (2 * ds),
            (h(s, x + dx) - h(s, x - dx)) / (2 * dx)};
  }

  double ratio_deriv(double s, double x) const {
    const double dx = x_grid.step();
    auto ratio = [&](double xx) {
      auto g = grad(s, xx);
      if (g[0] == 0) throw NumericalError("tabulated ratio_deriv: h_s = 0");
      return g[1] / g[0];
    };
    return (ratio(x + dx) - ratio(x - dx)) / (2 * dx);
  }
};

struct ConditionVerdict {
  bool pass = false;
  double worst_value = 0.0;  // extremal quantity the condition is judged on
  double witness_s = 0.0;
  double witness_x = 0.0;
  std::string note;
};

// Numerical audit of the artifact-freedom hypotheses on a grid of Omega_h:
//   boundary_decay  - h -> 0 at the boundary of Omega_{h,s}
//   hs_nonzero      - h_s never vanishes
//   ratio_injective - x -> h_x/h_s strictly monotone per s row
//   ratio_deriv_nonzero - d/dx(h_x/h_s) never vanishes
struct BolkerReport {
  ConditionVerdict boundary_decay;
  ConditionVerdict hs_nonzero;
  ConditionVerdict ratio_injective;
  ConditionVerdict ratio_deriv_nonzero;
  double s_lo = 0, s_hi = 0;
  int n_s = 0, x_resolution = 0;
  double tol = 0;

  bool all_pass() const {
    return boundary_decay.pass && hs_nonzero.pass && ratio_injective.pass &&
           ratio_deriv_nonzero.pass;
  }
};

namespace detail {

// Interior x nodes for one s row; the cone's unbounded side is capped.
inline std::vector<double> row_nodes(const Interval& dom, bool bounded_above,
                                     int res, double cap) {
  double lo = dom.lo;
  double hi = bounded_above ? dom.hi : cap;
  std::vector<double> xs(res);
  double w = hi - lo;
  for (int j = 0; j < res; ++j) xs[j] = lo + w * (j + 0.5) / res;
  return xs;
}

}  // namespace detail

// tol is scaled per condition by the grid maximum of the audited quantity,
// so the verdicts are unit-free. x_cap bounds the cone's open x side.
template <class Profile>
BolkerReport check_bolker(const Profile& prof, double s_lo, double s_hi,
                          int x_resolution, double tol = 1e-9, int n_s = 0,
                          double x_cap = 5.0) {
  if (x_resolution < 16) throw ConfigError("check_bolker: x_resolution >= 16");
  if (!(s_hi > s_lo)) throw ConfigError("check_bolker: empty s range");
  if (n_s <= 0) n_s = x_resolution;

  BolkerReport rep;
  rep.s_lo = s_lo;
  rep.s_hi = s_hi;
  rep.n_s = n_s;
  rep.x_resolution = x_resolution;
  rep.tol = tol;

  double max_abs_hs = 0, min_abs_hs = std::numeric_limits<double>::infinity();
  double max_abs_rd = 0, min_abs_rd = std::numeric_limits<double>::infinity();
  ConditionVerdict& hs = rep.hs_nonzero;
  ConditionVerdict& rd = rep.ratio_deriv_nonzero;
  ConditionVerdict& inj = rep.ratio_injective;
  inj.pass = true;
  inj.worst_value = std::numeric_limits<double>::infinity();

  // Boundary decay, two refinement levels: max h over boundary-adjacent
  // cells must shrink by at least 2x when cells shrink 4x.
  double bmax_coarse = 0, bmax_fine = 0;
  double bws = 0, bwx = 0;

  for (int i = 0; i < n_s; ++i) {
    const double s = s_lo + (s_hi - s_lo) * (n_s == 1 ? 0.5 : double(i) / (n_s - 1));
    Interval dom = prof.x_domain(s);
    auto xs = detail::row_nodes(dom, prof.bounded_above(), x_resolution, x_cap);

    double prev_ratio = 0;
    bool have_prev = false;
    int dir = 0;
    for (size_t j = 0; j < xs.size(); ++j) {
      const double x = xs[j];
      auto g = prof.grad(s, x);
      const double ahs = std::abs(g[0]);
      max_abs_hs = std::max(max_abs_hs, ahs);
      if (ahs < min_abs_hs) {
        min_abs_hs = ahs;
        hs.witness_s = s;
        hs.witness_x = x;
      }

      double r;
      bool r_ok = (g[0] != 0);
      if (r_ok) {
        r = g[1] / g[0];
        double ard;
        try {
          ard = std::abs(prof.ratio_deriv(s, x));
        } catch (const NumericalError&) {
          ard = 0;
        }
        max_abs_rd = std::max(max_abs_rd, ard);
        if (ard < min_abs_rd) {
          min_abs_rd = ard;
          rd.witness_s = s;
          rd.witness_x = x;
        }
        if (have_prev) {
          int d = (r > prev_ratio) ? 1 : (r < prev_ratio ? -1 : 0);
          if (d == 0 || (dir != 0 && d != dir)) {
            if (inj.pass || std::abs(r - prev_ratio) < inj.worst_value) {
              inj.witness_s = s;
              inj.witness_x = x;
              inj.worst_value = std::abs(r - prev_ratio);
            }
            inj.pass = false;
          }
          if (dir == 0) dir = d;
        }
        prev_ratio = r;
        have_prev = true;
      } else {
        // h_s = 0: the ratio is singular; condition (3) will flag it.
        have_prev = false;
        dir = 0;
      }
    }

    // Boundary-adjacent cells at two x refinements.
    auto bprobe = [&](int res) {
      double m = 0;
      auto nodes = detail::row_nodes(dom, prof.bounded_above(), res, x_cap);
      double v = prof.h(s, nodes.front());
      m = std::max(m, std::abs(v));
      if (prof.bounded_above()) m = std::max(m, std::abs(prof.h(s, nodes.back())));
      return m;
    };
    double bc = bprobe(x_resolution);
    double bf = bprobe(4 * x_resolution);
    if (bc > bmax_coarse) {
      bmax_coarse = bc;
      bws = s;
      bwx = dom.lo;
    }
    bmax_fine = std::max(bmax_fine, bf);
  }

  const double hs_tol = tol * std::max(max_abs_hs, 1e-300);
  hs.pass = min_abs_hs > hs_tol;
  hs.worst_value = min_abs_hs;
  hs.note = "min |h_s| vs tol " + std::to_string(hs_tol);

  const double rd_tol = tol * std::max(max_abs_rd, 1e-300);
  rd.pass = min_abs_rd > rd_tol;
  rd.worst_value = min_abs_rd;
  rd.note = "min |d/dx(h_x/h_s)| vs tol " + std::to_string(rd_tol);

  if (inj.pass) inj.note = "strictly monotone on every row (grid proxy)";
  else inj.note = "monotonicity break (grid proxy for injectivity)";

  ConditionVerdict& bd = rep.boundary_decay;
  bd.worst_value = (bmax_coarse > 0) ? bmax_fine / bmax_coarse : 0.0;
  bd.pass = bmax_fine <= 0.5 * bmax_coarse || bmax_coarse == 0;
  bd.witness_s = bws;
  bd.witness_x = bwx;
  bd.note = "boundary-cell max ratio fine/coarse";
  return rep;
}

// Reflection of a point in the plane tangent to the cylinder at angle theta.
inline std::array<double, 3> tangent_reflection(const std::array<double, 3>& x,
                                                double theta,
                                                const CenterSurface& surf = {}) {
  const double n1 = std::cos(theta), n2 = std::sin(theta);
  const double d = x[0] * n1 + x[1] * n2 - surf.radius;
  return {x[0] - 2 * d * n1, x[1] - 2 * d * n2, x[2]};
}

// Mirror locus of a point singularity: reflections in all tangent planes.
struct ArtifactCurve {
  std::array<double, 3> source{};
  std::vector<double> thetas;
  std::vector<std::array<double, 3>> points;
};

inline ArtifactCurve predict_artifact_curve(const std::array<double, 3>& source,
                                            int theta_samples,
                                            const CenterSurface& surf = {}) {
  if (theta_samples < 8) throw ConfigError("predict_artifact_curve: need >= 8 samples");
  ArtifactCurve curve;
  curve.source = source;
  curve.thetas.reserve(theta_samples);
  curve.points.reserve(theta_samples);
  for (int j = 0; j < theta_samples; ++j) {
    double th = 2.0 * kPi * j / theta_samples;
    curve.thetas.push_back(th);
    curve.points.push_back(tangent_reflection(source, th, surf));
  }
  return curve;
}

}  // namespace revrad

#endif
