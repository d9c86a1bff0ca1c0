#include "commands.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <stdexcept>

#include "sgr/embedding_io.hpp"
#include "sgr/errors.hpp"
#include "sgr/mesh_io.hpp"

namespace sgr::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

fs::path in_output_dir(const PipelineConfig& cfg, const std::string& name) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.output_dir.string());
  return cfg.output_dir / name;
}

fs::path resolve_output(const std::optional<fs::path>& given, const PipelineConfig& cfg, const std::string& fallback) {
  if (!given) return in_output_dir(cfg, fallback);
  if (given->has_parent_path()) return *given;
  return in_output_dir(cfg, given->string());
}

void print_report(const TopologyReport& r, std::ostream& out) {
  out << "vertices: " << r.vertex_count << '\n'
      << "edges: " << r.edge_count << '\n'
      << "faces: " << r.face_count << '\n'
      << "watertight: " << (r.is_watertight ? "true" : "false") << '\n'
      << "manifold: " << (r.is_manifold ? "true" : "false") << '\n'
      << "boundary_edges: " << r.boundary_edge_count << '\n'
      << "components: " << r.component_count << '\n'
      << "euler_characteristic: " << r.euler_characteristic << '\n'
      << "genus: " << (r.genus ? std::to_string(*r.genus) : std::string("undefined")) << '\n'
      << "degenerate_faces: " << r.degenerate_face_count << '\n';
}

void require_genus_zero(const TriangleMesh& mesh) {
  const TopologyReport r = validate_topology(mesh);
  if (!r.is_watertight || !r.is_manifold || r.component_count != 1) throw TopologyError("mesh is not a closed manifold");
  if (!r.genus || *r.genus != 0) throw TopologyError("genus must be zero");
  if (r.degenerate_face_count > 0) throw TopologyError("mesh has zero-area faces");
}

ParamConfig seeded(const PipelineConfig& cfg) {
  ParamConfig p = cfg.param;
  p.rng_seed = cfg.seed;
  return p;
}

void print_stats(const StretchStats& st, std::ostream& out) {
  out << "l2_stretch: " << num(st.l2_stretch) << '\n'
      << "linf_stretch: " << num(st.linf_stretch) << '\n'
      << "efficiency: " << num(st.efficiency) << '\n'
      << "energy: " << num(st.energy) << '\n';
}

json report_json(const MetricsReport& r) {
  json j;
  j["label"] = r.label;
  j["vertices"] = r.vertex_count;
  j["faces"] = r.face_count;
  j["alpha_nor"] = r.weights.alpha_nor;
  j["alpha_lap"] = r.weights.alpha_lap;
  j["alpha_edg"] = r.weights.alpha_edg;
  j["l_nor"] = r.l_nor;
  j["l_lap"] = r.l_lap;
  j["l_edge"] = r.l_edge;
  j["reg_total"] = r.reg_total;
  j["aspect_ratio_mean"] = r.aspect_ratio_mean;
  j["aspect_ratio_max"] = r.aspect_ratio_max;
  if (r.chamfer_mm) j["chamfer_mm"] = *r.chamfer_mm;
  if (r.f_score_pct) j["f_score_pct"] = *r.f_score_pct;
  if (r.tau_mm) j["tau_mm"] = *r.tau_mm;
  return j;
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << j.dump(2) << '\n';
  if (!f) throw IoError("cannot write " + path.string());
}

std::string cell(const json& row, const char* key) {
  if (!row.contains(key) || row[key].is_null()) return "-";
  const json& v = row[key];
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_number()) return std::to_string(v.get<long long>());
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

void PipelineConfig::validate() const {
  if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");
  if (!(tau_mm > 0.0)) throw std::invalid_argument("tau must be positive");
  if (chamfer_samples == 0) throw std::invalid_argument("chamfer_samples must be positive");
  for (int r : ladder)
    if (r < 2) throw std::invalid_argument("ladder resolutions must be >= 2");
  param.validate();
  reg_weights.validate();
}

std::vector<double> signal_for_kind(const TriangleMesh& mesh, SgrKind kind, int& channels) {
  std::vector<double> signal;
  if (kind == SgrKind::geometry) {
    channels = 3;
    for (const Vec3& v : mesh.vertices) signal.insert(signal.end(), {v.x, v.y, v.z});
  } else if (kind == SgrKind::texture) {
    channels = 3;
    std::vector<Vec3> normals(mesh.vertices.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f)
      for (int v : mesh.faces[f]) normals[v] += face_normal(mesh, f);
    for (const Vec3& n : normals) {
      const Vec3 u = normalized(n);
      signal.insert(signal.end(), {0.5 * (u.x + 1.0), 0.5 * (u.y + 1.0), 0.5 * (u.z + 1.0)});
    }
  } else {
    channels = 1;
    double mean = 0.0;
    for (const Vec3& v : mesh.vertices) mean += norm(v);
    mean /= static_cast<double>(mesh.vertices.size());
    for (const Vec3& v : mesh.vertices) signal.push_back(norm(v) - mean);
  }
  return signal;
}

int cmd_validate(const fs::path& mesh_path, std::ostream& out) {
  const TriangleMesh mesh = load_mesh(mesh_path);
  const TopologyReport r = validate_topology(mesh);
  print_report(r, out);
  const bool ok = r.is_genus_zero_surface();
  out << "status: " << (ok ? "ok" : "rejected") << '\n';
  return ok ? kExitOk : kExitDomain;
}

int cmd_param(const fs::path& mesh_path, const std::optional<fs::path>& out_path, const PipelineConfig& cfg,
              std::ostream& out) {
  cfg.validate();
  const TriangleMesh mesh = load_mesh(mesh_path);
  require_genus_zero(mesh);
  const ParamResult result = parameterize(mesh, seeded(cfg));
  const fs::path target = resolve_output(out_path, cfg, mesh_path.stem().string() + "_embedding.ply");
  save_embedding(result.embedding, target);
  out << "embedding: " << target.string() << '\n';
  print_stats(result.stats, out);
  return kExitOk;
}

int cmd_bake(const fs::path& mesh_path, const fs::path& embedding_path, SgrKind kind,
             const std::optional<fs::path>& out_path, const PipelineConfig& cfg, std::ostream& out) {
  cfg.validate();
  const TriangleMesh mesh = load_mesh(mesh_path);
  const SphericalEmbedding emb = load_embedding(embedding_path);
  check_embedding_matches(emb, mesh);
  int channels = 0;
  const auto signal = signal_for_kind(mesh, kind, channels);
  SgrMap map = bake(emb, signal, channels, cfg.resolution, kind);
  map.source_hash = mesh_hash(mesh);
  const fs::path target =
      resolve_output(out_path, cfg, mesh_path.stem().string() + "_" + to_string(kind) + "_r" +
                                        std::to_string(cfg.resolution) + ".png");
  write_sgr(map, target);
  out << "sgr: " << target.string() << '\n'
      << "kind: " << to_string(kind) << '\n'
      << "size: " << map.grid.width << "x" << map.grid.height << '\n'
      << "bit_depth: " << (kind == SgrKind::geometry ? 16 : 8) << '\n';
  return kExitOk;
}

int cmd_reconstruct(const fs::path& sgr_path, const std::optional<fs::path>& out_path, const PipelineConfig& cfg,
                    std::ostream& out) {
  const SgrMap map = read_sgr(sgr_path);
  const TriangleMesh mesh = reconstruct(map);
  const fs::path target = resolve_output(out_path, cfg, sgr_path.stem().string() + "_mesh.ply");
  save_mesh(mesh, target);
  const TopologyReport r = validate_topology(mesh);
  out << "mesh: " << target.string() << '\n'
      << "vertices: " << mesh.vertices.size() << '\n'
      << "faces: " << mesh.faces.size() << '\n'
      << "genus: " << (r.genus ? std::to_string(*r.genus) : std::string("undefined")) << '\n';
  return kExitOk;
}

int cmd_roundtrip(const fs::path& mesh_path, const std::optional<fs::path>& report_path, const PipelineConfig& cfg,
                  std::ostream& out) {
  cfg.validate();
  const TriangleMesh mesh = load_mesh(mesh_path);
  require_genus_zero(mesh);
  const std::string stem = mesh_path.stem().string();
  const ParamResult param = parameterize(mesh, seeded(cfg));
  const double diagonal = bounding_box(mesh.vertices).diagonal();

  json report;
  report["mesh"] = mesh_path.filename().string();
  report["seed"] = cfg.seed;
  report["efficiency"] = param.stats.efficiency;
  report["bbox_diagonal"] = diagonal;
  report["rows"] = json::array();
  for (int r : cfg.ladder) {
    SgrMap map = bake_geometry(mesh, param.embedding, r);
    const fs::path png = in_output_dir(cfg, stem + "_r" + std::to_string(r) + ".png");
    write_sgr(map, png);
    const TriangleMesh rec = reconstruct(read_sgr(png));
    save_mesh(rec, in_output_dir(cfg, stem + "_r" + std::to_string(r) + ".ply"));
    const SurfaceDistances d = surface_distances(mesh, rec, cfg.chamfer_samples, cfg.seed);
    const AspectRatioStats ar = aspect_ratio(rec);
    json row;
    row["resolution"] = r;
    row["vertices"] = rec.vertices.size();
    row["faces"] = rec.faces.size();
    row["chamfer_mm"] = chamfer_distance(d);
    row["f_score_pct"] = f_score(d, cfg.tau_mm);
    row["tau_mm"] = cfg.tau_mm;
    row["aspect_ratio_mean"] = ar.mean;
    row["aspect_ratio_max"] = ar.max;
    row["closed_genus_zero"] = validate_topology(rec).is_genus_zero_surface();
    report["rows"].push_back(row);
  }
  const fs::path target = resolve_output(report_path, cfg, stem + "_roundtrip.json");
  write_json(report, target);
  out << "efficiency: " << num(param.stats.efficiency) << '\n';
  out << "report: " << target.string() << '\n';
  return cmd_metrics_table(target, out);
}

int cmd_metrics(const std::vector<fs::path>& meshes, bool batch, const std::optional<fs::path>& json_path,
                const PipelineConfig& cfg, std::ostream& out) {
  cfg.validate();
  if (meshes.empty()) throw std::invalid_argument("metrics needs at least one mesh");
  if (!batch && meshes.size() > 2) throw std::invalid_argument("metrics takes one or two meshes (use --batch for more)");
  json report;
  report["rows"] = json::array();
  if (batch) {
    MetricsReport mean;
    mean.label = "mean";
    mean.weights = cfg.reg_weights;
    for (const fs::path& p : meshes) {
      MetricsReport r = single_mesh_metrics(load_mesh(p), cfg.reg_weights);
      r.label = p.filename().string();
      report["rows"].push_back(report_json(r));
      mean.l_nor += r.l_nor;
      mean.l_lap += r.l_lap;
      mean.l_edge += r.l_edge;
      mean.reg_total += r.reg_total;
      mean.aspect_ratio_mean += r.aspect_ratio_mean;
      mean.aspect_ratio_max = std::max(mean.aspect_ratio_max, r.aspect_ratio_max);
    }
    const double n = static_cast<double>(meshes.size());
    mean.l_nor /= n;
    mean.l_lap /= n;
    mean.l_edge /= n;
    mean.reg_total /= n;
    mean.aspect_ratio_mean /= n;
    report["rows"].push_back(report_json(mean));
    out << mean.to_key_value();
  } else {
    const TriangleMesh a = load_mesh(meshes[0]);
    MetricsReport r = single_mesh_metrics(a, cfg.reg_weights);
    r.label = meshes[0].filename().string();
    if (meshes.size() == 2) {
      const TriangleMesh b = load_mesh(meshes[1]);
      const SurfaceDistances d = surface_distances(a, b, cfg.chamfer_samples, cfg.seed);
      r.chamfer_mm = chamfer_distance(d);
      r.f_score_pct = f_score(d, cfg.tau_mm);
      r.tau_mm = cfg.tau_mm;
    }
    report["rows"].push_back(report_json(r));
    out << r.to_key_value();
  }
  if (json_path) write_json(report, resolve_output(json_path, cfg, json_path->string()));
  return kExitOk;
}

int cmd_metrics_table(const fs::path& report_path, std::ostream& out) {
  std::ifstream in(report_path);
  if (!in) throw IoError("cannot read " + report_path.string());
  json report;
  try {
    report = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(report_path.string() + ": " + e.what());
  }
  if (!report.contains("rows") || !report["rows"].is_array()) throw IoError(report_path.string() + ": no rows");
  std::vector<std::string> columns;
  for (const json& row : report["rows"])
    for (const auto& [key, value] : row.items())
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
  std::vector<std::size_t> widths;
  std::vector<std::vector<std::string>> cells;
  for (const std::string& c : columns) widths.push_back(c.size());
  for (const json& row : report["rows"]) {
    std::vector<std::string> line;
    for (std::size_t k = 0; k < columns.size(); ++k) {
      line.push_back(cell(row, columns[k].c_str()));
      widths[k] = std::max(widths[k], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t k = 0; k < line.size(); ++k)
      out << (k ? "  " : "") << std::setw(static_cast<int>(widths[k])) << line[k];
    out << '\n';
  };
  emit(columns);
  for (const auto& line : cells) emit(line);
  return kExitOk;
}

int cmd_pad(const fs::path& sgr_path, const std::optional<fs::path>& out_path, const PipelineConfig& cfg,
            std::ostream& out) {
  SgrMap map = read_sgr(sgr_path);
  SgrMap padded;
  padded.kind = map.kind;
  padded.grid = center_symmetric_pad(map.grid);
  padded.quantization = map.quantization;
  padded.source_hash = map.source_hash;
  const fs::path target = resolve_output(out_path, cfg, sgr_path.stem().string() + "_padded.png");
  write_sgr(padded, target);
  out << "padded: " << target.string() << '\n'
      << "size: " << padded.grid.width << "x" << padded.grid.height << '\n';
  return kExitOk;
}

}  // namespace sgr::cli
