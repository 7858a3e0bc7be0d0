#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "revrad/config.hpp"
#include "revrad/io.hpp"

using namespace revrad;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("revrad-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string stem(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("raw f64 round trip is byte exact") {
  TempDir tmp;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1e6, 1e6);
  std::vector<double> data(257);
  for (double& v : data) v = unif(rng);
  data[0] = 0.0;
  data[1] = -0.0;
  data[2] = 1e-308;
  const std::string path = tmp.stem("blob.f64");
  write_f64(path, data);
  auto back = read_f64(path);
  REQUIRE(back.size() == data.size());
  for (size_t i = 0; i < data.size(); ++i) CHECK(back[i] == data[i]);
  CHECK(fs::file_size(path) == data.size() * sizeof(double));
}

TEST_CASE("bad payload sizes rejected") {
  TempDir tmp;
  const std::string path = tmp.stem("odd.f64");
  {
    std::ofstream out(path, std::ios::binary);
    out.write("abc", 3);
  }
  CHECK_THROWS_AS(read_f64(path), IoError);
  CHECK_THROWS_AS(read_f64(tmp.stem("missing.f64")), IoError);
  CHECK_THROWS_AS(read_json(tmp.stem("missing.json")), IoError);
}

TEST_CASE("volume save/load round trip") {
  TempDir tmp;
  Volume vol(9, 1.5, 0.25);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (double& v : vol.values) v = unif(rng);
  save_volume(tmp.stem("vol"), vol);
  Volume back = load_volume(tmp.stem("vol"));
  CHECK(back.n == vol.n);
  CHECK(back.extent == vol.extent);
  CHECK(back.support_margin == vol.support_margin);
  CHECK(back.values == vol.values);
  const json meta = read_json(tmp.stem("vol") + ".json");
  CHECK(meta.at("format_version") == kFormatVersion);
  CHECK(meta.at("kind") == "volume");
}

TEST_CASE("sinogram save/load round trip with embedded config") {
  TempDir tmp;
  Sinogram sino(AxisGrid(0.2, 2.2, 7), 5, symmetric_grid(1.0, 0.5));
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (double& v : sino.values) v = unif(rng);
  RunConfig cfg;
  save_sinogram(tmp.stem("sino"), sino, {{"config", to_json(cfg)}});
  Sinogram back = load_sinogram(tmp.stem("sino"));
  CHECK(back.s_grid.n == sino.s_grid.n);
  CHECK(back.n_theta == sino.n_theta);
  CHECK(back.y_grid.lo == sino.y_grid.lo);
  CHECK(back.values == sino.values);
  const json meta = read_json(tmp.stem("sino") + ".json");
  CHECK(meta.at("config").at("family") == "sphere");
}

TEST_CASE("config JSON round trip preserves every field") {
  RunConfig cfg;
  cfg.family = Family::Lemon;
  cfg.alpha = 1.5;
  cfg.n = 65;
  cfg.extent = 1.25;
  cfg.s_min = 0.3;
  cfg.s_max = 2.0;
  cfg.n_s = 49;
  cfg.n_theta = 24;
  cfg.y3_extent = 4.0;
  cfg.phantom.kind = PhantomSpec::Kind::Delta;
  cfg.phantom.delta.position = {0.5, -0.25, 0.125};
  cfg.noise_gamma = 5.0;
  cfg.noise_seed = 99;
  cfg.inversion.volterra_alpha = 1e-3;
  cfg.inversion.m_solver = LandweberConfig{321, 0.01};
  cfg.bolker_resolution = 128;
  cfg.artifact_theta_samples = 48;
  cfg.output_dir = "/tmp/out";

  RunConfig back = config_from_json(to_json(cfg));
  CHECK(back.family == cfg.family);
  CHECK(back.alpha == cfg.alpha);
  CHECK(back.n == cfg.n);
  CHECK(back.extent == cfg.extent);
  CHECK(back.s_min == cfg.s_min);
  CHECK(back.s_max == cfg.s_max);
  CHECK(back.n_s == cfg.n_s);
  CHECK(back.n_theta == cfg.n_theta);
  CHECK(back.y3_extent == cfg.y3_extent);
  CHECK(back.phantom.kind == PhantomSpec::Kind::Delta);
  CHECK(back.phantom.delta.position == cfg.phantom.delta.position);
  CHECK(back.noise_gamma == cfg.noise_gamma);
  CHECK(back.noise_seed == cfg.noise_seed);
  CHECK(back.inversion.volterra_alpha == cfg.inversion.volterra_alpha);
  REQUIRE(std::holds_alternative<LandweberConfig>(back.inversion.m_solver));
  CHECK(std::get<LandweberConfig>(back.inversion.m_solver).iterations == 321);
  CHECK(back.bolker_resolution == cfg.bolker_resolution);
  CHECK(back.artifact_theta_samples == cfg.artifact_theta_samples);
  CHECK(back.output_dir == cfg.output_dir);
}

TEST_CASE("config validation errors") {
  json j = to_json(RunConfig{});
  j["grid"]["n"] = 10;  // even
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = to_json(RunConfig{});
  j["sinogram"]["s_min"] = -0.1;
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = to_json(RunConfig{});
  j["sinogram"]["y3_extent"] = 0.5;
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = to_json(RunConfig{});
  j["schema_version"] = 99;
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = to_json(RunConfig{});
  j["family"] = "torus";
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = to_json(RunConfig{});
  j["inversion"]["m_solver"]["type"] = "jacobi";
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
}

TEST_CASE("profile and mu spec JSON round trips") {
  ProfileSpec p = profile_from_json(to_json(ProfileSpec::spheroid(3.0)));
  CHECK(p.family == Family::Spheroid);
  CHECK(p.c == 3.0);
  MuSpec m = mu_from_json(to_json(ProfileSpec::lemon(1.5)));
  // lemon tau at the diagonal: sqrt(s + alpha^2/s)
  CHECK(m.tau(2.0, 2.0) == doctest::Approx(std::sqrt(2.0 + 1.5 * 1.5 / 2.0)));
}

TEST_CASE("report serialization carries witnesses") {
  BolkerReport rep = check_bolker(ProfileSpec::sphere(), 0.2, 2.2, 64);
  json j = to_json(rep);
  CHECK(j.at("all_pass") == true);
  CHECK(j.at("boundary_decay").at("pass") == true);
  CHECK(j.contains("tol"));
}

TEST_CASE("csv outputs have pinned headers") {
  TempDir tmp;
  ConditionCurve curve;
  curve.xi = {0.0, 1.0};
  curve.cond = {1.5, 2.5};
  save_condition_csv(tmp.stem("cond.csv"), curve);
  std::ifstream in(tmp.stem("cond.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "xi,cond");
  std::getline(in, line);
  CHECK(line == "0,1.5");

  ArtifactCurve ac = predict_artifact_curve({0.0, 0.0, 0.0}, 8);
  save_curve_csv(tmp.stem("curve.csv"), ac);
  std::ifstream cin(tmp.stem("curve.csv"));
  std::getline(cin, line);
  CHECK(line == "theta,x1,x2,x3");
}
