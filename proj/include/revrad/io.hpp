#ifndef REVRAD_IO_HPP
#define REVRAD_IO_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "revrad/bolker.hpp"
#include "revrad/core.hpp"
#include "revrad/errors.hpp"
#include "revrad/experiments.hpp"
#include "revrad/profiles.hpp"

namespace revrad {

using nlohmann::json;

constexpr int kFormatVersion = 1;
constexpr const char* kFrequencyConvention =
    "angular; forward DFT unscaled, inverse carries 1/N";

// Raw little-endian float64 array, C order. Callers describe the layout in
// the JSON sidecar written next to it.
inline void write_f64(const std::string& path, const std::vector<double>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!out) throw IoError("short write: " + path);
}

inline std::vector<double> read_f64(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open: " + path);
  const auto bytes = in.tellg();
  if (bytes % sizeof(double) != 0)
    throw IoError("file size not a multiple of 8: " + path);
  std::vector<double> data(static_cast<size_t>(bytes) / sizeof(double));
  in.seekg(0);
  in.read(reinterpret_cast<char*>(data.data()), bytes);
  if (!in) throw IoError("short read: " + path);
  return data;
}

inline void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

inline json to_json(const AxisGrid& g) {
  return {{"lo", g.lo}, {"hi", g.hi}, {"n", g.n}};
}

inline AxisGrid axis_grid_from_json(const json& j) {
  return AxisGrid(j.at("lo").get<double>(), j.at("hi").get<double>(),
                  j.at("n").get<int>());
}

inline void save_volume(const std::string& stem, const Volume& vol) {
  write_f64(stem + ".f64", vol.values);
  write_json(stem + ".json",
             {{"format_version", kFormatVersion},
              {"kind", "volume"},
              {"shape", {vol.n, vol.n, vol.n}},
              {"order", "C (x1, x2, x3)"},
              {"extent", vol.extent},
              {"support_margin", vol.support_margin},
              {"frequency_convention", kFrequencyConvention}});
}

inline Volume load_volume(const std::string& stem) {
  const json meta = read_json(stem + ".json");
  Volume vol(meta.at("shape")[0].get<int>(), meta.at("extent").get<double>(),
             meta.value("support_margin", 0.0));
  auto data = read_f64(stem + ".f64");
  if (data.size() != vol.values.size())
    throw IoError("volume payload size mismatch: " + stem);
  vol.values = std::move(data);
  return vol;
}

inline void save_sinogram(const std::string& stem, const Sinogram& sino,
                          const json& extra = json::object()) {
  write_f64(stem + ".f64", sino.values);
  json meta = {{"format_version", kFormatVersion},
               {"kind", "sinogram"},
               {"shape", {sino.s_grid.n, sino.n_theta, sino.y_grid.n}},
               {"order", "C (s, theta, y3)"},
               {"s_grid", to_json(sino.s_grid)},
               {"n_theta", sino.n_theta},
               {"y_grid", to_json(sino.y_grid)},
               {"frequency_convention", kFrequencyConvention}};
  meta.update(extra);
  write_json(stem + ".json", meta);
}

inline Sinogram load_sinogram(const std::string& stem) {
  const json meta = read_json(stem + ".json");
  Sinogram sino(axis_grid_from_json(meta.at("s_grid")),
                meta.at("n_theta").get<int>(),
                axis_grid_from_json(meta.at("y_grid")));
  auto data = read_f64(stem + ".f64");
  if (data.size() != sino.values.size())
    throw IoError("sinogram payload size mismatch: " + stem);
  sino.values = std::move(data);
  return sino;
}

inline json to_json(const ConditionVerdict& v) {
  return {{"pass", v.pass},
          {"worst_value", v.worst_value},
          {"witness_s", v.witness_s},
          {"witness_x", v.witness_x},
          {"note", v.note}};
}

inline json to_json(const BolkerReport& r) {
  return {{"boundary_decay", to_json(r.boundary_decay)},
          {"hs_nonzero", to_json(r.hs_nonzero)},
          {"ratio_injective", to_json(r.ratio_injective)},
          {"ratio_deriv_nonzero", to_json(r.ratio_deriv_nonzero)},
          {"s_range", {r.s_lo, r.s_hi}},
          {"n_s", r.n_s},
          {"x_resolution", r.x_resolution},
          {"tol", r.tol},
          {"all_pass", r.all_pass()}};
}

inline json to_json(const ArtifactMatchReport& r) {
  json off = json::array();
  for (const auto& m : r.strong_off_curve) off.push_back({m[0], m[1], m[2]});
  return {{"n_predicted", r.n_predicted},
          {"n_matched", r.n_matched},
          {"fraction", r.fraction},
          {"artifact_amplitude", r.artifact_amplitude},
          {"strong_off_curve", off}};
}

inline void save_condition_csv(const std::string& path,
                               const ConditionCurve& curve) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "xi,cond\n";
  out.precision(17);
  for (size_t i = 0; i < curve.xi.size(); ++i)
    out << curve.xi[i] << "," << curve.cond[i] << "\n";
}

inline void save_curve_csv(const std::string& path, const ArtifactCurve& curve) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "theta,x1,x2,x3\n";
  out.precision(17);
  for (size_t i = 0; i < curve.points.size(); ++i)
    out << curve.thetas[i] << "," << curve.points[i][0] << ","
        << curve.points[i][1] << "," << curve.points[i][2] << "\n";
}

}  // namespace revrad

#endif
