#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "sgr/errors.hpp"

namespace fs = std::filesystem;
using namespace sgr::cli;

int main(int argc, char** argv) {
  CLI::App app{"Spherical geometry representation toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key = value config file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);

  PipelineConfig cfg;
  std::string output_dir = ".";
  app.add_option("--output-dir,--output_dir", output_dir, "directory for generated files")
      ->envname("SGR_OUTPUT_DIR")
      ->capture_default_str();
  app.add_option("--resolution", cfg.resolution, "SGR grid resolution")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for parameterization and sampling")->capture_default_str();
  app.add_option("--epsilon", cfg.param.epsilon, "inverse-stretch regularization weight")->capture_default_str();
  app.add_option("--p", cfg.param.p, "inverse-stretch exponent")->capture_default_str();
  app.add_option("--directions", cfg.param.directions_per_pass, "great-circle searches per vertex")
      ->capture_default_str();
  app.add_option("--local-tolerance,--local_tolerance", cfg.param.local_tolerance)->capture_default_str();
  app.add_option("--sweep-growth,--sweep_growth", cfg.param.global_sweep_growth_factor)->capture_default_str();
  app.add_option("--sweep-threshold,--sweep_threshold", cfg.param.global_convergence_threshold)
      ->capture_default_str();
  app.add_option("--alpha-nor,--alpha_nor", cfg.reg_weights.alpha_nor)->capture_default_str();
  app.add_option("--alpha-lap,--alpha_lap", cfg.reg_weights.alpha_lap)->capture_default_str();
  app.add_option("--alpha-edg,--alpha_edg", cfg.reg_weights.alpha_edg)->capture_default_str();
  double e0 = 0.0;
  auto* e0_opt = app.add_option("--e0", e0, "target edge length (default: mean edge length)");
  app.add_option("--samples", cfg.chamfer_samples, "surface samples per mesh for distances")->capture_default_str();
  app.add_option("--tau", cfg.tau_mm, "F-score threshold")->capture_default_str();
  app.add_option("--ladder", cfg.ladder, "roundtrip resolutions")->delimiter(',')->capture_default_str();
  app.fallthrough();

  fs::path mesh, second, embedding, sgr_file;
  std::optional<fs::path> out;
  std::string kind_name = "geometry";
  std::vector<fs::path> metric_meshes;
  bool batch = false;
  std::optional<fs::path> table;

  auto* validate = app.add_subcommand("validate", "check that a mesh is a closed genus-zero manifold");
  validate->add_option("mesh", mesh)->required();

  auto* param = app.add_subcommand("param", "compute a spherical parameterization");
  param->add_option("mesh", mesh)->required();
  param->add_option("-o,--out", out, "embedding PLY path");

  auto* bake = app.add_subcommand("bake", "bake an SGR map from a mesh and its embedding");
  bake->add_option("mesh", mesh)->required();
  bake->add_option("embedding", embedding)->required();
  bake->add_option("--kind", kind_name)->check(CLI::IsMember({"geometry", "texture", "displacement"}));
  bake->add_option("-o,--out", out, "PNG path");

  auto* rec = app.add_subcommand("reconstruct", "rebuild a mesh from a geometry SGR");
  rec->add_option("sgr", sgr_file)->required();
  rec->add_option("-o,--out", out, "mesh path (.ply or .obj)");

  auto* rt = app.add_subcommand("roundtrip", "param + bake + reconstruct over a resolution ladder");
  rt->add_option("mesh", mesh)->required();
  rt->add_option("-o,--out", out, "JSON report path");

  auto* metrics = app.add_subcommand("metrics", "geometry metrics for one mesh, a pair, or a batch");
  metrics->add_option("meshes", metric_meshes);
  metrics->add_flag("--batch", batch, "average single-mesh metrics over all inputs");
  metrics->add_option("--table", table, "print a saved JSON report as a table");
  metrics->add_option("-o,--out", out, "JSON report path");

  auto* pad = app.add_subcommand("pad", "center-symmetric padding of an SGR image");
  pad->add_option("sgr", sgr_file)->required();
  pad->add_option("-o,--out", out, "PNG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitIo;
  }

  try {
    cfg.output_dir = output_dir;
    if (e0_opt->count() > 0) cfg.reg_weights.e0 = e0;
    if (*validate) return cmd_validate(mesh, std::cout);
    if (*param) return cmd_param(mesh, out, cfg, std::cout);
    if (*bake) return cmd_bake(mesh, embedding, sgr::kind_from_string(kind_name), out, cfg, std::cout);
    if (*rec) return cmd_reconstruct(sgr_file, out, cfg, std::cout);
    if (*rt) return cmd_roundtrip(mesh, out, cfg, std::cout);
    if (*metrics) {
      if (table) return cmd_metrics_table(*table, std::cout);
      return cmd_metrics(metric_meshes, batch, out, cfg, std::cout);
    }
    if (*pad) return cmd_pad(sgr_file, out, cfg, std::cout);
  } catch (const sgr::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitIo;
}
