#ifndef REVRAD_EXPERIMENTS_HPP
#define REVRAD_EXPERIMENTS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "revrad/bolker.hpp"
#include "revrad/core.hpp"
#include "revrad/errors.hpp"
#include "revrad/profiles.hpp"
#include "revrad/volterra.hpp"

namespace revrad {

struct DeltaSpec {
  std::array<double, 3> position{};
};

struct HollowCuboidSpec {
  std::array<double, 3> outer_half{0.45, 0.45, 0.9};
  double wall = 0.15;
  std::array<double, 3> center{0, 0, 0};
};

struct PhantomSpec {
  enum class Kind { Delta, HollowCuboid } kind = Kind::HollowCuboid;
  DeltaSpec delta;
  HollowCuboidSpec cuboid;
  double support_margin = 0.2;  // declared min distance from S
};

// Delta: one voxel of mass 1 (value 1/voxel volume) at the snapped position.
// HollowCuboid: indicator of the outer box minus the inner box.
inline Volume make_phantom(const PhantomSpec& spec, int n, double extent,
                           const CenterSurface& surf = {}) {
  Volume vol(n, extent, spec.support_margin);
  const AxisGrid g = vol.grid();
  if (spec.kind == PhantomSpec::Kind::Delta) {
    const auto& p = spec.delta.position;
    const int i = g.nearest(p[0]), j = g.nearest(p[1]), k = g.nearest(p[2]);
    if (surf.distance(g.at(i), g.at(j), g.at(k)) < spec.support_margin)
      throw PreconditionError("delta phantom violates the support margin");
    const double dv = vol.spacing();
    vol.at(i, j, k) = 1.0 / (dv * dv * dv);
  } else {
    const auto& c = spec.cuboid;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double x = g.at(i) - c.center[0];
          const double y = g.at(j) - c.center[1];
          const double z = g.at(k) - c.center[2];
          const bool outer = std::abs(x) <= c.outer_half[0] &&
                             std::abs(y) <= c.outer_half[1] &&
                             std::abs(z) <= c.outer_half[2];
          if (!outer) continue;
          const bool inner = std::abs(x) <= c.outer_half[0] - c.wall &&
                             std::abs(y) <= c.outer_half[1] - c.wall &&
                             std::abs(z) <= c.outer_half[2] - c.wall;
          if (inner) continue;
          if (surf.distance(g.at(i), g.at(j), g.at(k)) < spec.support_margin)
            throw PreconditionError("cuboid phantom violates the support margin");
          vol.at(i, j, k) = 1.0;
        }
  }
  return vol;
}

// Additive Gaussian noise scaled so ||noise|| / ||sino|| = gamma/100 exactly.
inline Sinogram add_noise(const Sinogram& sino, double gamma_percent,
                          uint64_t seed) {
  if (gamma_percent < 0) throw ConfigError("add_noise: gamma must be >= 0");
  if (gamma_percent == 0) return sino;
  Sinogram out = sino;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> w(sino.values.size());
  double wn2 = 0;
  for (double& v : w) {
    v = normal(rng);
    wn2 += v * v;
  }
  const double scale = (gamma_percent / 100.0) * sino.norm2() / std::sqrt(wn2);
  for (size_t i = 0; i < w.size(); ++i) out.values[i] += scale * w[i];
  return out;
}

inline double rel_error(const Volume& rec, const Volume& truth) {
  if (rec.n != truth.n || rec.extent != truth.extent)
    throw ConfigError("rel_error: mismatched grids");
  const double tn = truth.norm2();
  if (tn == 0) throw ConfigError("rel_error: zero ground truth");
  double d2 = 0;
  for (size_t i = 0; i < rec.values.size(); ++i) {
    const double d = rec.values[i] - truth.values[i];
    d2 += d * d;
  }
  return std::sqrt(d2) / tn;
}

struct ConditionCurve {
  std::vector<double> xi;
  std::vector<double> cond;
  double area = 0.0;  // trapezoid over the xi samples
};

inline ConditionCurve condition_curve(const MuSpec& mu, const AxisGrid& s_grid,
                                      const std::vector<double>& xi_values) {
  ConditionCurve curve;
  curve.xi = xi_values;
  curve.cond.resize(xi_values.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < static_cast<int>(xi_values.size()); ++i)
    curve.cond[i] = condition_number(volterra_matrix(mu, xi_values[i], s_grid));
  for (size_t i = 0; i + 1 < xi_values.size(); ++i)
    curve.area += 0.5 * (curve.cond[i] + curve.cond[i + 1]) *
                  (xi_values[i + 1] - xi_values[i]);
  return curve;
}

struct ArtifactMatchReport {
  int n_predicted = 0;
  int n_matched = 0;
  double fraction = 0.0;
  double artifact_amplitude = 0.0;  // max |rec| over predicted curve samples
  // Local maxima above half the artifact amplitude further than
  // `off_curve_voxels` voxels from curve and source.
  std::vector<std::array<int, 3>> strong_off_curve;
};

// Compares the predicted mirror curve with the reconstruction: extracts
// local maxima of |rec| (26-neighborhood, small relative plateau tolerance)
// outside an exclusion ball around the true delta, then matches curve
// samples against them at one-voxel tolerance.
inline ArtifactMatchReport artifact_match(const Volume& rec,
                                          const ArtifactCurve& curve,
                                          double amplitude_threshold = 0.05,
                                          int exclusion_voxels = 2,
                                          int off_curve_voxels = 2) {
  const AxisGrid g = rec.grid();
  const int n = rec.n;
  double vmax = 0;
  for (double v : rec.values) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0) {  // empty volume: no maxima, nothing matches
    ArtifactMatchReport rep;
    rep.n_predicted = static_cast<int>(curve.points.size());
    return rep;
  }
  const double floor_val = amplitude_threshold * vmax;
  const double plateau = 1e-9 * vmax;

  const int si = g.nearest(curve.source[0]);
  const int sj = g.nearest(curve.source[1]);
  const int sk = g.nearest(curve.source[2]);

  std::vector<std::array<int, 3>> maxima;
  for (int i = 1; i + 1 < n; ++i)
    for (int j = 1; j + 1 < n; ++j)
      for (int k = 1; k + 1 < n; ++k) {
        const double v = std::abs(rec.at(i, j, k));
        if (v < floor_val) continue;
        if (std::max({std::abs(i - si), std::abs(j - sj), std::abs(k - sk)}) <=
            exclusion_voxels)
          continue;
        bool is_max = true;
        for (int a = -1; a <= 1 && is_max; ++a)
          for (int b = -1; b <= 1 && is_max; ++b)
            for (int c = -1; c <= 1; ++c) {
              if (!a && !b && !c) continue;
              if (std::abs(rec.at(i + a, j + b, k + c)) > v + plateau) {
                is_max = false;
                break;
              }
            }
        if (is_max) maxima.push_back({i, j, k});
      }

  ArtifactMatchReport rep;
  rep.n_predicted = static_cast<int>(curve.points.size());
  for (const auto& p : curve.points) {
    const int pi = g.nearest(p[0]), pj = g.nearest(p[1]), pk = g.nearest(p[2]);
    rep.artifact_amplitude =
        std::max(rep.artifact_amplitude, std::abs(rec.at(pi, pj, pk)));
    for (const auto& m : maxima)
      if (std::max({std::abs(m[0] - pi), std::abs(m[1] - pj),
                    std::abs(m[2] - pk)}) <= 1) {
        ++rep.n_matched;
        break;
      }
  }
  rep.fraction = rep.n_predicted ? double(rep.n_matched) / rep.n_predicted : 0.0;

  for (const auto& m : maxima) {
    if (std::abs(rec.at(m[0], m[1], m[2])) <= 0.5 * rep.artifact_amplitude)
      continue;
    if (std::max({std::abs(m[0] - si), std::abs(m[1] - sj), std::abs(m[2] - sk)}) <=
        off_curve_voxels)
      continue;
    bool near_curve = false;
    for (const auto& p : curve.points) {
      const int pi = g.nearest(p[0]), pj = g.nearest(p[1]), pk = g.nearest(p[2]);
      if (std::max({std::abs(m[0] - pi), std::abs(m[1] - pj),
                    std::abs(m[2] - pk)}) <= off_curve_voxels) {
        near_curve = true;
        break;
      }
    }
    if (!near_curve) rep.strong_off_curve.push_back(m);
  }
  return rep;
}

}  // namespace revrad

#endif
