#ifndef REVRAD_CONFIG_HPP
#define REVRAD_CONFIG_HPP

#include <string>

#include "revrad/experiments.hpp"
#include "revrad/io.hpp"
#include "revrad/profiles.hpp"
#include "revrad/projector.hpp"
#include "revrad/reconstruct.hpp"

namespace revrad {

constexpr int kConfigSchemaVersion = 1;

// One self-describing run configuration; every command reads it whole and
// serializes it back into the output metadata for reproducibility.
struct RunConfig {
  Family family = Family::Sphere;
  double c = 2.0;
  double alpha = 2.0;

  int n = 33;          // volume N
  double extent = 1.0;  // volume half-width L

  double s_min = 0.2, s_max = 2.2;
  int n_s = 33;
  int n_theta = 33;
  double y3_extent = 5.0;

  PhantomSpec phantom;
  double noise_gamma = 0.0;
  uint64_t noise_seed = 1;

  InversionConfig inversion;

  // Bolker audit settings
  double bolker_s_lo = 0.2, bolker_s_hi = 2.2;
  int bolker_resolution = 64;
  double bolker_tol = 1e-9;

  int artifact_theta_samples = 64;

  std::string output_dir = ".";

  ProfileSpec profile() const {
    switch (family) {
      case Family::Sphere: return ProfileSpec::sphere();
      case Family::Spheroid: return ProfileSpec::spheroid(c);
      case Family::Lemon: return ProfileSpec::lemon(alpha);
      case Family::Cone: return ProfileSpec::cone();
    }
    throw ConfigError("bad family");
  }

  MuSpec mu() const { return MuSpec::from_family(family, c, alpha); }

  SinoGrids sino_grids() const {
    Volume probe(n, extent);
    return SinoGrids{AxisGrid(s_min, s_max, n_s), n_theta,
                     symmetric_grid(y3_extent, probe.spacing())};
  }

  void validate() const {
    if (n < 3 || n % 2 == 0) throw ConfigError("config: N must be odd, >= 3");
    if (!(extent > 0)) throw ConfigError("config: extent must be positive");
    if (!(s_min > 0) || !(s_max > s_min))
      throw ConfigError("config: need 0 < s_min < s_max");
    if (n_s < 2 || n_theta < 1) throw ConfigError("config: degenerate sinogram grid");
    if (!(y3_extent > extent)) throw ConfigError("config: y3 extent must exceed L");
    if (family == Family::Spheroid && !(c > 0))
      throw ConfigError("config: spheroid needs c > 0");
    if (family == Family::Lemon && !(alpha > 0))
      throw ConfigError("config: lemon needs alpha > 0");
    if (noise_gamma < 0) throw ConfigError("config: noise gamma must be >= 0");
  }
};

inline json to_json(const PhantomSpec& p) {
  if (p.kind == PhantomSpec::Kind::Delta)
    return {{"kind", "delta"},
            {"position", {p.delta.position[0], p.delta.position[1], p.delta.position[2]}},
            {"support_margin", p.support_margin}};
  return {{"kind", "hollow_cuboid"},
          {"outer_half", {p.cuboid.outer_half[0], p.cuboid.outer_half[1], p.cuboid.outer_half[2]}},
          {"wall", p.cuboid.wall},
          {"center", {p.cuboid.center[0], p.cuboid.center[1], p.cuboid.center[2]}},
          {"support_margin", p.support_margin}};
}

inline PhantomSpec phantom_from_json(const json& j) {
  PhantomSpec p;
  const std::string kind = j.at("kind").get<std::string>();
  p.support_margin = j.value("support_margin", 0.2);
  if (kind == "delta") {
    p.kind = PhantomSpec::Kind::Delta;
    auto pos = j.at("position");
    p.delta.position = {pos[0], pos[1], pos[2]};
  } else if (kind == "hollow_cuboid") {
    p.kind = PhantomSpec::Kind::HollowCuboid;
    if (j.contains("outer_half")) {
      auto o = j.at("outer_half");
      p.cuboid.outer_half = {o[0], o[1], o[2]};
    }
    p.cuboid.wall = j.value("wall", p.cuboid.wall);
    if (j.contains("center")) {
      auto cjs = j.at("center");
      p.cuboid.center = {cjs[0], cjs[1], cjs[2]};
    }
  } else {
    throw ConfigError("config: unknown phantom kind " + kind);
  }
  return p;
}

inline json to_json(const InversionConfig& c) {
  json solver;
  if (std::holds_alternative<LandweberConfig>(c.m_solver)) {
    const auto& lw = std::get<LandweberConfig>(c.m_solver);
    solver = {{"type", "landweber"},
              {"iterations", lw.iterations},
              {"relaxation", lw.relaxation}};
  } else {
    const auto& cg = std::get<CglsTvConfig>(c.m_solver);
    solver = {{"type", "cgls_tv"},
              {"cg_iterations", cg.cg_iterations},
              {"tv_weight", cg.tv_weight},
              {"denoise_interval", cg.denoise_interval},
              {"tv_inner_iterations", cg.tv_inner_iterations}};
  }
  return {{"volterra_alpha", c.volterra_alpha}, {"m_solver", solver}};
}

inline InversionConfig inversion_from_json(const json& j) {
  InversionConfig c;
  c.volterra_alpha = j.value("volterra_alpha", c.volterra_alpha);
  if (j.contains("m_solver")) {
    const json& s = j.at("m_solver");
    const std::string type = s.value("type", "cgls_tv");
    if (type == "landweber") {
      LandweberConfig lw;
      lw.iterations = s.value("iterations", lw.iterations);
      lw.relaxation = s.value("relaxation", lw.relaxation);
      c.m_solver = lw;
    } else if (type == "cgls_tv") {
      CglsTvConfig cg;
      cg.cg_iterations = s.value("cg_iterations", cg.cg_iterations);
      cg.tv_weight = s.value("tv_weight", cg.tv_weight);
      cg.denoise_interval = s.value("denoise_interval", cg.denoise_interval);
      cg.tv_inner_iterations = s.value("tv_inner_iterations", cg.tv_inner_iterations);
      c.m_solver = cg;
    } else {
      throw ConfigError("config: unknown m_solver type " + type);
    }
  }
  return c;
}

inline json to_json(const RunConfig& c) {
  return {{"schema_version", kConfigSchemaVersion},
          {"family", family_name(c.family)},
          {"c", c.c},
          {"alpha", c.alpha},
          {"grid", {{"n", c.n}, {"extent", c.extent}}},
          {"sinogram",
           {{"s_min", c.s_min},
            {"s_max", c.s_max},
            {"n_s", c.n_s},
            {"n_theta", c.n_theta},
            {"y3_extent", c.y3_extent}}},
          {"phantom", to_json(c.phantom)},
          {"noise", {{"gamma", c.noise_gamma}, {"seed", c.noise_seed}}},
          {"inversion", to_json(c.inversion)},
          {"bolker",
           {{"s_lo", c.bolker_s_lo},
            {"s_hi", c.bolker_s_hi},
            {"resolution", c.bolker_resolution},
            {"tol", c.bolker_tol}}},
          {"artifact_theta_samples", c.artifact_theta_samples},
          {"output_dir", c.output_dir}};
}

inline RunConfig config_from_json(const json& j) {
  RunConfig c;
  const int ver = j.value("schema_version", kConfigSchemaVersion);
  if (ver != kConfigSchemaVersion)
    throw ConfigError("config: unsupported schema_version " + std::to_string(ver));
  if (j.contains("family")) c.family = family_from_name(j.at("family"));
  c.c = j.value("c", c.c);
  c.alpha = j.value("alpha", c.alpha);
  if (j.contains("grid")) {
    c.n = j.at("grid").value("n", c.n);
    c.extent = j.at("grid").value("extent", c.extent);
  }
  if (j.contains("sinogram")) {
    const json& s = j.at("sinogram");
    c.s_min = s.value("s_min", c.s_min);
    c.s_max = s.value("s_max", c.s_max);
    c.n_s = s.value("n_s", c.n_s);
    c.n_theta = s.value("n_theta", c.n_theta);
    c.y3_extent = s.value("y3_extent", c.y3_extent);
  }
  if (j.contains("phantom")) c.phantom = phantom_from_json(j.at("phantom"));
  if (j.contains("noise")) {
    c.noise_gamma = j.at("noise").value("gamma", c.noise_gamma);
    c.noise_seed = j.at("noise").value("seed", c.noise_seed);
  }
  if (j.contains("inversion")) c.inversion = inversion_from_json(j.at("inversion"));
  if (j.contains("bolker")) {
    const json& b = j.at("bolker");
    c.bolker_s_lo = b.value("s_lo", c.bolker_s_lo);
    c.bolker_s_hi = b.value("s_hi", c.bolker_s_hi);
    c.bolker_resolution = b.value("resolution", c.bolker_resolution);
    c.bolker_tol = b.value("tol", c.bolker_tol);
  }
  c.artifact_theta_samples =
      j.value("artifact_theta_samples", c.artifact_theta_samples);
  c.output_dir = j.value("output_dir", c.output_dir);
  c.validate();
  return c;
}

// Profile/mu spec JSON: {"family": "spheroid", "c": 2.0} etc.
inline json to_json(const ProfileSpec& p) {
  json j = {{"family", family_name(p.family)}};
  if (p.family == Family::Spheroid) j["c"] = p.c;
  if (p.family == Family::Lemon) j["alpha"] = p.alpha;
  return j;
}

inline ProfileSpec profile_from_json(const json& j) {
  const Family f = family_from_name(j.at("family"));
  switch (f) {
    case Family::Sphere: return ProfileSpec::sphere();
    case Family::Spheroid: return ProfileSpec::spheroid(j.at("c").get<double>());
    case Family::Lemon: return ProfileSpec::lemon(j.at("alpha").get<double>());
    case Family::Cone: return ProfileSpec::cone();
  }
  throw ConfigError("bad family");
}

inline MuSpec mu_from_json(const json& j) {
  const Family f = family_from_name(j.at("family"));
  return MuSpec::from_family(f, j.value("c", 0.0), j.value("alpha", 0.0));
}

}  // namespace revrad

#endif
