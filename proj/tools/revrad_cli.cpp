// Batch front end: every command reads one JSON config and writes files plus
// sidecars into the output directory. Exit codes: 0 ok, 2 validation,
// 3 numerical failure, 4 I/O.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "revrad/revrad.hpp"

namespace fs = std::filesystem;
using namespace revrad;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

RunConfig load_config(const std::string& path) {
  return config_from_json(read_json(path));
}

std::string out_stem(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.output_dir);
  return (fs::path(cfg.output_dir) / name).string();
}

Volume build_phantom(const RunConfig& cfg) {
  return make_phantom(cfg.phantom, cfg.n, cfg.extent);
}

int cmd_simulate(const RunConfig& cfg) {
  Volume phantom = build_phantom(cfg);
  const SinoGrids grids = cfg.sino_grids();
  Sinogram sino = (cfg.family == Family::Cone)
                      ? cone_forward(phantom, grids)
                      : forward_project(phantom, cfg.mu(), grids);
  sino = add_noise(sino, cfg.noise_gamma, cfg.noise_seed);
  save_volume(out_stem(cfg, "phantom"), phantom);
  save_sinogram(out_stem(cfg, "sinogram"), sino, {{"config", to_json(cfg)}});
  std::cout << "wrote " << out_stem(cfg, "sinogram") << ".f64 ("
            << grids.s.n << " x " << grids.n_theta << " x " << grids.y3.n
            << ")\n";
  return 0;
}

int cmd_reconstruct(const RunConfig& cfg, const std::string& input_stem) {
  if (cfg.family == Family::Cone)
    throw ConfigError("reconstruct: the cone family has no full inverse here; "
                      "use the slice tools");
  Sinogram sino = load_sinogram(input_stem);
  ReconstructionDiagnostics diag;
  Volume rec = reconstruct(sino, cfg.mu(), cfg.inversion, cfg.n, cfg.extent, {},
                           &diag);
  save_volume(out_stem(cfg, "reconstruction"), rec);

  json report = {{"imag_residual", diag.imag_residual},
                 {"config", to_json(cfg)}};
  // With a known phantom we can score the run.
  try {
    Volume truth = build_phantom(cfg);
    report["rel_error"] = rel_error(rec, truth);
  } catch (const PreconditionError&) {
    // no comparable ground truth; skip the metric
  } catch (const ConfigError&) {
  }
  if (cfg.phantom.kind == PhantomSpec::Kind::Delta) {
    ArtifactCurve curve = predict_artifact_curve(cfg.phantom.delta.position,
                                                 cfg.artifact_theta_samples);
    report["artifact_match"] = to_json(artifact_match(rec, curve));
  }
  write_json(out_stem(cfg, "report") + ".json", report);
  std::cout << "wrote " << out_stem(cfg, "reconstruction") << ".f64\n";
  if (report.contains("rel_error"))
    std::cout << "rel_error = " << report["rel_error"].get<double>() << "\n";
  return 0;
}

int cmd_check_bolker(const RunConfig& cfg) {
  BolkerReport rep = [&] {
    const ProfileSpec prof = cfg.profile();
    if (cfg.family == Family::Lemon) {
      // audit in the arc parameter p over the range mapped from [s_lo, s_hi]
      const double p_hi = lemon_p_of_s(cfg.alpha, cfg.bolker_s_lo);
      return check_bolker(prof, 0.0, p_hi, cfg.bolker_resolution, cfg.bolker_tol);
    }
    return check_bolker(prof, cfg.bolker_s_lo, cfg.bolker_s_hi,
                        cfg.bolker_resolution, cfg.bolker_tol);
  }();
  json j = to_json(rep);
  j["config"] = to_json(cfg);
  write_json(out_stem(cfg, "bolker") + ".json", j);

  auto row = [](const char* name, const ConditionVerdict& v) {
    std::printf("  %-22s %-4s worst=%.3e at (s=%.4f, x=%.4f)  %s\n", name,
                v.pass ? "PASS" : "FAIL", v.worst_value, v.witness_s,
                v.witness_x, v.note.c_str());
  };
  std::printf("bolker audit: %s\n", family_name(cfg.family));
  row("boundary_decay", rep.boundary_decay);
  row("hs_nonzero", rep.hs_nonzero);
  row("ratio_injective", rep.ratio_injective);
  row("ratio_deriv_nonzero", rep.ratio_deriv_nonzero);
  std::printf("  overall: %s\n", rep.all_pass() ? "PASS" : "FAIL");
  return 0;
}

int cmd_condnum(const RunConfig& cfg) {
  if (cfg.family == Family::Cone)
    throw ConfigError("condnum: no Volterra factor for the cone family");
  const SinoGrids grids = cfg.sino_grids();
  const int ny = grids.y3.n;
  std::vector<double> xis;
  for (int k = 0; k <= ny / 2; ++k)
    xis.push_back(fft_xi(k, ny, grids.y3.step()));
  ConditionCurve curve = condition_curve(cfg.mu(), grids.s, xis);
  save_condition_csv(out_stem(cfg, "condnum") + ".csv", curve);
  write_json(out_stem(cfg, "condnum") + ".json",
             {{"area", curve.area}, {"config", to_json(cfg)}});
  std::cout << "area under curve = " << curve.area << "\n";
  return 0;
}

int cmd_predict_artifacts(const RunConfig& cfg) {
  if (cfg.phantom.kind != PhantomSpec::Kind::Delta)
    throw ConfigError("predict-artifacts: needs a delta phantom");
  ArtifactCurve curve = predict_artifact_curve(cfg.phantom.delta.position,
                                               cfg.artifact_theta_samples);
  // close the curve: repeat the theta = 0 point at theta = 2 pi
  curve.thetas.push_back(2.0 * kPi);
  curve.points.push_back(curve.points.front());
  save_curve_csv(out_stem(cfg, "artifact_curve") + ".csv", curve);
  write_json(out_stem(cfg, "artifact_curve") + ".json",
             {{"source", {curve.source[0], curve.source[1], curve.source[2]}},
              {"samples", cfg.artifact_theta_samples},
              {"config", to_json(cfg)}});
  std::cout << "wrote " << out_stem(cfg, "artifact_curve") << ".csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Radon transform toolkit for surfaces of revolution"};
  app.require_subcommand(1);

  std::string config_path, input_stem, output_dir;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "JSON run configuration")
        ->required();
    sub->add_option("-o,--output-dir", output_dir,
                    "override the config output directory");
  };

  CLI::App* sim = app.add_subcommand("simulate", "phantom -> sinogram files");
  add_common(sim);
  CLI::App* rec =
      app.add_subcommand("reconstruct", "sinogram files -> volume + report");
  add_common(rec);
  rec->add_option("-i,--input", input_stem,
                  "input sinogram stem (expects .f64 + .json)")
      ->required();
  CLI::App* bol = app.add_subcommand("check-bolker", "artifact-freedom audit");
  add_common(bol);
  CLI::App* cond =
      app.add_subcommand("condnum", "condition numbers of the Volterra factors");
  add_common(cond);
  CLI::App* art =
      app.add_subcommand("predict-artifacts", "mirror-curve prediction");
  add_common(art);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (sim->parsed()) return cmd_simulate(cfg);
    if (rec->parsed()) return cmd_reconstruct(cfg, input_stem);
    if (bol->parsed()) return cmd_check_bolker(cfg);
    if (cond->parsed()) return cmd_condnum(cfg);
    if (art->parsed()) return cmd_predict_artifacts(cfg);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "invalid run: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
