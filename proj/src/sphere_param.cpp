#include "sgr/sphere_param.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "sgr/errors.hpp"
#include "sgr/predicates.hpp"

namespace sgr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Stand-in for +inf inside the line search so the parabolic fit never sees inf - inf.
constexpr double kBarrier = 1e100;

struct FaceStretch {
  double area = 0.0;         // mesh triangle area
  double domain_area = 0.0;  // flattened sphere triangle area
  double big2 = 0.0;         // Gamma^2
  double small2 = 0.0;       // gamma^2
  bool ok = false;
};

// The sphere triangle is flattened by orthogonal projection onto the tangent plane at its
// normalized centroid, so its flattened area vanishes exactly when det[s0, s1, s2] does and the
// energy blows up before a face can flip. Frame-free singular values: with D and M the Gram
// matrices of the flattened sphere and mesh edge vectors, Gamma^2 + gamma^2 = tr(M D^-1) and
// Gamma^2 gamma^2 = det M / det D.
FaceStretch stretch_of(const Vec3& m0, const Vec3& m1, const Vec3& m2, const Vec3& s0, const Vec3& s1,
                       const Vec3& s2) {
  FaceStretch out;
  const Vec3 c = normalized(s0 + s1 + s2);
  if (norm2(c) == 0.0) return out;
  auto flatten = [&c](const Vec3& e) { return e - c * dot(e, c); };
  const Vec3 d1 = flatten(s1 - s0), d2 = flatten(s2 - s0);
  const Vec3 e1 = m1 - m0, e2 = m2 - m0;
  const double det_d = norm2(cross(d1, d2));
  const double det_m = norm2(cross(e1, e2));
  if (!(det_d > 0.0) || !(det_m > 0.0)) return out;
  const double d11 = dot(d1, d1), d12 = dot(d1, d2), d22 = dot(d2, d2);
  const double m11 = dot(e1, e1), m12 = dot(e1, e2), m22 = dot(e2, e2);
  const double sum = (d22 * m11 - 2.0 * d12 * m12 + d11 * m22) / det_d;
  const double prod = det_m / det_d;
  const double disc = std::sqrt(std::max(0.0, sum * sum - 4.0 * prod));
  out.big2 = 0.5 * (sum + disc);
  out.small2 = std::min(prod / out.big2, out.big2);  // rounding can nudge it past Gamma^2
  out.area = 0.5 * std::sqrt(det_m);
  out.domain_area = 0.5 * std::sqrt(det_d);
  out.ok = true;
  return out;
}

struct EnergyWeights {
  double epsilon = 0.0;
  double scale = 0.0;  // (A_M / 4pi)^(p/2 + 1)
  double half_p = 2.0;
};

EnergyWeights weights_for(const ParamConfig& cfg, double surface_area) {
  return {cfg.epsilon, std::pow(surface_area / (4.0 * std::numbers::pi), 0.5 * cfg.p + 1.0), 0.5 * cfg.p};
}

// A_T * ((Gamma^2 + gamma^2) / 2 + eps * scale * (1/gamma)^p), or +inf when flipped or degenerate.
double face_energy(const TriangleMesh& mesh, const Face& f, const Vec3& s0, const Vec3& s1, const Vec3& s2,
                   const EnergyWeights& w) {
  if (orient_origin(s0, s1, s2) <= 0) return kInf;
  const FaceStretch fs = stretch_of(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]], s0, s1, s2);
  if (!fs.ok) return kInf;
  const double inv_small2 = 1.0 / fs.small2;
  return fs.area * (0.5 * (fs.big2 + fs.small2) + w.epsilon * w.scale * std::pow(inv_small2, w.half_p));
}

double active_surface_area(const TriangleMesh& mesh, const SphericalEmbedding& emb) {
  double area = 0.0;
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    if (!emb.face_active[f]) continue;
    const Face& t = emb.faces[f];
    area += 0.5 * norm(cross(mesh.vertices[t[1]] - mesh.vertices[t[0]], mesh.vertices[t[2]] - mesh.vertices[t[0]]));
  }
  return area;
}

// Rotates a face so `v` comes first; returns the opposite directed edge.
std::pair<int, int> opposite_edge(const Face& t, int v) {
  if (t[0] == v) return {t[1], t[2]};
  if (t[1] == v) return {t[2], t[0]};
  return {t[0], t[1]};
}

std::vector<int> incident_faces(const SphericalEmbedding& emb, int v) {
  std::vector<int> out;
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    if (!emb.face_active[f]) continue;
    const Face& t = emb.faces[f];
    if (t[0] == v || t[1] == v || t[2] == v) out.push_back(static_cast<int>(f));
  }
  return out;
}

double local_energy_at(const SphericalEmbedding& emb, int v, const Vec3& x, std::span<const int> faces,
                       const TriangleMesh& mesh, const EnergyWeights& w) {
  double total = 0.0;
  for (int f : faces) {
    const Face& t = emb.faces[f];
    const Vec3& s0 = t[0] == v ? x : emb.positions[t[0]];
    const Vec3& s1 = t[1] == v ? x : emb.positions[t[1]];
    const Vec3& s2 = t[2] == v ? x : emb.positions[t[2]];
    total += face_energy(mesh, t, s0, s1, s2, w);
    if (total == kInf) return kInf;
  }
  return total;
}

Vec3 random_tangent(const Vec3& x, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (;;) {
    const Vec3 g{gauss(rng), gauss(rng), gauss(rng)};
    const Vec3 t = g - x * dot(g, x);
    const double n = norm(t);
    if (n > 1e-6) return t / n;
  }
}

double optimize_core(SphericalEmbedding& emb, int v, std::span<const int> faces, const TriangleMesh& mesh,
                     const ParamConfig& cfg, const EnergyWeights& w, std::mt19937_64& rng) {
  if (faces.empty()) return 0.0;
  const int bits = std::clamp(static_cast<int>(std::ceil(-std::log2(cfg.local_tolerance))) + 1, 8,
                              std::numeric_limits<double>::digits / 2);
  double moved = 0.0;
  Vec3 x0 = emb.positions[v];
  double f0 = local_energy_at(emb, v, x0, faces, mesh, w);
  if (f0 == kInf) return 0.0;

  for (int pass = 0; pass < cfg.directions_per_pass; ++pass) {
    const Vec3 d = random_tangent(x0, rng);
    double lo = -std::numbers::pi / 2, hi = std::numbers::pi / 2;
    for (int f : faces) {
      const auto [a, b] = opposite_edge(emb.faces[f], v);
      const Vec3 n = cross(emb.positions[a], emb.positions[b]);
      const double alpha = std::atan2(dot(n, d), dot(n, x0));
      lo = std::max(lo, alpha - std::numbers::pi / 2);
      hi = std::min(hi, alpha + std::numbers::pi / 2);
    }
    if (!(lo < 0.0 && hi > 0.0)) continue;
    auto along = [&](double theta) { return normalized(x0 * std::cos(theta) + d * std::sin(theta)); };
    auto objective = [&](double theta) {
      const double e = local_energy_at(emb, v, along(theta), faces, mesh, w);
      return e == kInf ? kBarrier : e;
    };
    std::uintmax_t iterations = static_cast<std::uintmax_t>(cfg.max_line_search_iterations);
    const auto [theta, value] = boost::math::tools::brent_find_minima(objective, lo, hi, bits, iterations);
    if (!(value < f0 - 1e-14 * std::abs(f0)) || theta == 0.0) continue;
    const Vec3 x = along(theta);
    const double fx = local_energy_at(emb, v, x, faces, mesh, w);
    if (!(fx < f0)) continue;
    moved += std::acos(std::clamp(dot(x, x0), -1.0, 1.0));
    x0 = x;
    f0 = fx;
    emb.positions[v] = x;
  }
  return moved;
}

const Vec3 kTetra[4] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};

bool strictly_inside(const std::vector<std::pair<Vec3, Vec3>>& edges, const Vec3& x) {
  if (norm2(x) == 0.0) return false;
  for (const auto& [a, b] : edges)
    if (orient_origin(x, a, b) <= 0) return false;
  return true;
}

}  // namespace

std::size_t SphericalEmbedding::active_vertex_count() const {
  return static_cast<std::size_t>(std::count(vertex_active.begin(), vertex_active.end(), 1));
}

bool SphericalEmbedding::complete() const {
  return std::all_of(vertex_active.begin(), vertex_active.end(), [](auto a) { return a != 0; }) &&
         std::all_of(face_active.begin(), face_active.end(), [](auto a) { return a != 0; });
}

SphericalEmbedding SphericalEmbedding::from_positions(const TriangleMesh& mesh, std::vector<Vec3> positions) {
  if (positions.size() != mesh.vertices.size()) throw DomainError("embedding size does not match mesh");
  SphericalEmbedding emb;
  emb.positions = std::move(positions);
  emb.faces = mesh.faces;
  emb.vertex_active.assign(mesh.vertices.size(), 1);
  emb.face_active.assign(mesh.faces.size(), 1);
  emb.source_hash = mesh_hash(mesh);
  return emb;
}

std::size_t count_flipped(const SphericalEmbedding& emb) {
  std::size_t flipped = 0;
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    if (!emb.face_active[f]) continue;
    const Face& t = emb.faces[f];
    if (orient_origin(emb.positions[t[0]], emb.positions[t[1]], emb.positions[t[2]]) <= 0) ++flipped;
  }
  return flipped;
}

bool KernelRegion::contains(const Vec3& x) const { return strictly_inside(edges, x); }

KernelRegion edge_kernel(std::vector<std::pair<Vec3, Vec3>> edges, const Vec3* hint) {
  KernelRegion k;
  for (const auto& [a, b] : edges) {
    const Vec3 n = normalized(cross(a, b));
    if (norm2(n) == 0.0) throw DomainError("kernel edge is degenerate (identical or antipodal endpoints)");
    k.half_space_normals.push_back(n);
  }
  k.edges = std::move(edges);
  const auto& normals = k.half_space_normals;
  if (normals.empty()) {
    k.is_empty = false;
    k.representative = hint ? normalized(*hint) : Vec3{0, 0, 1};
    return k;
  }

  auto accept = [&](const Vec3& x) {
    if (!strictly_inside(k.edges, x)) return false;
    k.is_empty = false;
    k.representative = x;
    return true;
  };

  // Corners of the kernel polygon: boundary intersections that satisfy every constraint.
  Vec3 corner_sum;
  int corners = 0;
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j) {
      const Vec3 c = normalized(cross(normals[i], normals[j]));
      if (norm2(c) == 0.0) continue;
      for (double sign : {1.0, -1.0}) {
        const Vec3 x = c * sign;
        bool feasible = true;
        for (const Vec3& n : normals)
          if (dot(n, x) < -1e-12) {
            feasible = false;
            break;
          }
        if (feasible) corner_sum += x, ++corners;
      }
    }
  if (corners > 0 && accept(normalized(corner_sum))) return k;

  Vec3 normal_sum;
  for (const Vec3& n : normals) normal_sum += n;
  Vec3 ring_sum;
  for (const auto& [a, b] : k.edges) ring_sum += a;
  std::vector<Vec3> starts;
  if (corners > 0) starts.push_back(normalized(corner_sum));
  if (hint) starts.push_back(normalized(*hint));
  starts.push_back(normalized(normal_sum));
  starts.push_back(normalized(ring_sum));
  for (const Vec3& s : starts)
    if (accept(s)) return k;

  // Push toward the most violated half-space until every constraint holds.
  for (Vec3 x : starts) {
    if (norm2(x) == 0.0) continue;
    double step = 0.2;
    for (int it = 0; it < 400; ++it) {
      std::size_t worst = 0;
      double worst_value = kInf;
      for (std::size_t e = 0; e < normals.size(); ++e) {
        const double value = dot(normals[e], x);
        if (value < worst_value) worst_value = value, worst = e;
      }
      if (worst_value > 0.0 && accept(x)) return k;
      x = normalized(x + normals[worst] * step);
      step *= 0.985;
    }
  }

  return k;
}

KernelRegion polygon_kernel(std::span<const Vec3> ring) {
  if (ring.size() < 3) throw DomainError("kernel ring needs at least 3 points");
  std::vector<std::pair<Vec3, Vec3>> edges;
  for (std::size_t e = 0; e < ring.size(); ++e) {
    const Vec3& a = ring[e];
    const Vec3& b = ring[(e + 1) % ring.size()];
    if (a == b || a == -b) throw DomainError("kernel ring has identical or antipodal consecutive points");
    edges.emplace_back(a, b);
  }
  return edge_kernel(std::move(edges));
}

SphericalEmbedding embed_base(const ProgressiveMesh& pm) {
  SphericalEmbedding emb;
  emb.positions.assign(pm.vertex_count, Vec3{});
  emb.faces.assign(pm.face_count, Face{-1, -1, -1});
  emb.vertex_active.assign(pm.vertex_count, 0);
  emb.face_active.assign(pm.face_count, 0);
  const double inv = 1.0 / std::sqrt(3.0);
  for (int k = 0; k < 4; ++k) {
    emb.positions[pm.base_vertices[k]] = kTetra[k] * inv;
    emb.vertex_active[pm.base_vertices[k]] = 1;
  }
  for (const auto& [f, t] : pm.base_faces) {
    emb.faces[f] = t;
    emb.face_active[f] = 1;
  }
  const Face& first = pm.base_faces.front().second;
  if (orient_origin(emb.positions[first[0]], emb.positions[first[1]], emb.positions[first[2]]) < 0)
    std::swap(emb.positions[pm.base_vertices[0]], emb.positions[pm.base_vertices[1]]);
  if (count_flipped(emb) != 0) throw DomainError("embed_base: base connectivity is not a consistently oriented tetrahedron");
  return emb;
}

void insert_vertex(SphericalEmbedding& emb, const VertexSplit& split) {
  apply_split(split, emb.faces, emb.face_active);
  emb.vertex_active[split.vertex] = 1;
  std::vector<int> faces;
  for (const auto& [f, slot] : split.relinked) faces.push_back(f);
  faces.push_back(split.restored_faces[0]);
  faces.push_back(split.restored_faces[1]);
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  std::vector<std::pair<Vec3, Vec3>> edges;
  for (int f : faces) {
    const auto [a, b] = opposite_edge(emb.faces[f], split.vertex);
    edges.emplace_back(emb.positions[a], emb.positions[b]);
  }
  const Vec3 parent = emb.positions[split.parent];
  KernelRegion kernel = edge_kernel(edges, &parent);
  if (kernel.is_empty) {
    // Faces away from the parent are valid at the parent, so the kernel contains a wedge touching
    // it, bounded by the two edges through the parent. Step into that wedge along its bisector.
    Vec3 bisector;
    for (const auto& [a, b] : edges) {
      if (a == parent) bisector += normalized(cross(a, b));
      if (b == parent) bisector += normalized(cross(a, b));
    }
    if (norm2(bisector) > 0.0) {
      bisector = normalized(bisector - parent * dot(bisector, parent));
      for (double step = 1e-2; step > 1e-14 && kernel.is_empty; step *= 0.25) {
        const Vec3 x = normalized(parent + bisector * step);
        if (strictly_inside(edges, x)) kernel.is_empty = false, kernel.representative = x;
      }
    }
  }
  if (kernel.is_empty) throw DomainError("insert_vertex: empty kernel");
  emb.positions[split.vertex] = kernel.representative;
}

std::pair<double, double> face_stretch(const std::array<Vec3, 3>& m, const std::array<Vec3, 3>& s) {
  const FaceStretch fs = stretch_of(m[0], m[1], m[2], s[0], s[1], s[2]);
  if (!fs.ok) throw DomainError("face_stretch: zero-area triangle");
  return {std::sqrt(fs.big2), std::sqrt(fs.small2)};
}

void ParamConfig::validate() const {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (p < 2 || p % 2 != 0) throw std::invalid_argument("p must be an even integer >= 2");
  if (directions_per_pass < 1) throw std::invalid_argument("directions_per_pass must be >= 1");
  if (!(local_tolerance > 0.0)) throw std::invalid_argument("local_tolerance must be > 0");
  if (!(global_sweep_growth_factor > 1.0)) throw std::invalid_argument("global_sweep_growth_factor must be > 1");
  if (!(global_convergence_threshold > 0.0)) throw std::invalid_argument("global_convergence_threshold must be > 0");
  if (max_line_search_iterations < 1) throw std::invalid_argument("max_line_search_iterations must be >= 1");
  if (max_sweep_passes < 1) throw std::invalid_argument("max_sweep_passes must be >= 1");
}

StretchStats stretch_energy(const TriangleMesh& mesh, const SphericalEmbedding& emb, const ParamConfig& cfg) {
  StretchStats st;
  double l2_sum = 0.0;
  double reg = 0.0;
  double linf = 0.0;
  st.valid = true;
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    if (!emb.face_active[f]) continue;
    const Face& t = emb.faces[f];
    const Vec3 &s0 = emb.positions[t[0]], &s1 = emb.positions[t[1]], &s2 = emb.positions[t[2]];
    const FaceStretch fs = stretch_of(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]], s0, s1, s2);
    if (!fs.ok || orient_origin(s0, s1, s2) <= 0) {
      st.valid = false;
      st.per_face_singular_values.emplace_back(fs.ok ? std::sqrt(fs.big2) : kInf, fs.ok ? std::sqrt(fs.small2) : 0.0);
      continue;
    }
    st.per_face_singular_values.emplace_back(std::sqrt(fs.big2), std::sqrt(fs.small2));
    st.surface_area += fs.area;
    st.domain_area += fs.domain_area;
    l2_sum += fs.area * 0.5 * (fs.big2 + fs.small2);
    reg += fs.area * std::pow(1.0 / fs.small2, 0.5 * cfg.p);
    linf = std::max(linf, std::sqrt(fs.big2));
  }
  if (!st.valid || st.surface_area <= 0.0) {
    st.valid = false;
    st.energy = kInf;
    st.l2_stretch = kInf;
    st.linf_stretch = kInf;
    st.efficiency = 0.0;
    return st;
  }
  const double l2_squared = l2_sum / st.surface_area;
  // Normalized so an isometry onto a sphere of equal area scores 1.
  const double area_ratio = st.surface_area / st.domain_area;
  st.l2_stretch = std::sqrt(l2_squared / area_ratio);
  st.linf_stretch = linf / std::sqrt(area_ratio);
  st.efficiency = area_ratio / l2_squared;
  st.regularizer_sum = reg / st.surface_area;
  st.regularizer_scale = weights_for(cfg, st.surface_area).scale;
  st.energy = l2_squared + cfg.epsilon * st.regularizer_scale * st.regularizer_sum;
  return st;
}

double local_energy(const SphericalEmbedding& emb, int v, const TriangleMesh& mesh, const ParamConfig& cfg) {
  const auto faces = incident_faces(emb, v);
  return local_energy_at(emb, v, emb.positions[v], faces, mesh, weights_for(cfg, active_surface_area(mesh, emb)));
}

double optimize_vertex(SphericalEmbedding& emb, int v, const TriangleMesh& mesh, const ParamConfig& cfg,
                       std::mt19937_64& rng) {
  const auto faces = incident_faces(emb, v);
  return optimize_core(emb, v, faces, mesh, cfg, weights_for(cfg, active_surface_area(mesh, emb)), rng);
}

namespace {

class Parameterizer {
 public:
  Parameterizer(const TriangleMesh& mesh, const ParamConfig& cfg, ParamTrace* trace)
      : mesh_(mesh), cfg_(cfg), trace_(trace), rng_(cfg.rng_seed) {}

  ParamResult run() {
    const ProgressiveMesh pm = simplify_to_tetrahedron(mesh_, cfg_.rng_seed);
    emb_ = embed_base(pm);
    emb_.source_hash = mesh_hash(mesh_);
    incident_.assign(mesh_.vertices.size(), {});
    for (const auto& [f, t] : pm.base_faces)
      for (int v : t) incident_[v].push_back(f);
    area_ = active_surface_area(mesh_, emb_);
    refresh_weights();

    std::size_t active = 4;
    std::size_t next_sweep = static_cast<std::size_t>(std::ceil(4 * cfg_.global_sweep_growth_factor));
    for (auto it = pm.splits.rbegin(); it != pm.splits.rend(); ++it) {
      insert(*it);
      ++active;
      optimize(it->vertex);
      for (int w : neighbors(it->vertex)) optimize(w);
      if (trace_) {
        trace_->flipped_after_step.push_back(count_flipped(emb_));
        trace_->efficiency_after_step.push_back(stretch_energy(mesh_, emb_, cfg_).efficiency);
      }
      if (cfg_.enable_global_sweeps && active >= next_sweep && it + 1 != pm.splits.rend()) {
        sweep(active);
        next_sweep = static_cast<std::size_t>(std::ceil(static_cast<double>(active) * cfg_.global_sweep_growth_factor));
      }
    }
    if (trace_) trace_->efficiency_before_sweeps = stretch_energy(mesh_, emb_, cfg_).efficiency;
    if (cfg_.enable_global_sweeps) sweep(active);

    if (count_flipped(emb_) != 0) throw DomainError("parameterize: embedding has flipped triangles");
    ParamResult result;
    result.stats = stretch_energy(mesh_, emb_, cfg_);
    result.embedding = std::move(emb_);
    return result;
  }

 private:
  void refresh_weights() { weights_ = weights_for(cfg_, area_); }

  double area_of(int f) const {
    const Face& t = emb_.faces[f];
    return 0.5 * norm(cross(mesh_.vertices[t[1]] - mesh_.vertices[t[0]], mesh_.vertices[t[2]] - mesh_.vertices[t[0]]));
  }

  void insert(const VertexSplit& split) {
    for (const auto& [f, slot] : split.relinked) area_ -= area_of(f);
    insert_vertex(emb_, split);
    for (const auto& [f, slot] : split.relinked) {
      area_ += area_of(f);
      auto& list = incident_[split.parent];
      list.erase(std::remove(list.begin(), list.end(), f), list.end());
      incident_[split.vertex].push_back(f);
    }
    for (int f : split.restored_faces) {
      area_ += area_of(f);
      for (int v : emb_.faces[f]) incident_[v].push_back(f);
    }
    refresh_weights();
  }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (int f : incident_[v])
      for (int w : emb_.faces[f])
        if (w != v) out.push_back(w);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  double optimize(int v) { return optimize_core(emb_, v, incident_[v], mesh_, cfg_, weights_, rng_); }

  // Lazy max-queue keyed by how far each vertex's neighborhood has moved since it was last optimized.
  void sweep(std::size_t active) {
    area_ = active_surface_area(mesh_, emb_);
    refresh_weights();
    SweepRecord record;
    record.active_vertices = active;
    if (trace_) record.energy_before = stretch_energy(mesh_, emb_, cfg_).energy;

    std::vector<double> priority(emb_.positions.size(), 0.0);
    using Entry = std::pair<double, int>;
    auto cmp = [](const Entry& a, const Entry& b) { return a.first < b.first || (a.first == b.first && a.second > b.second); };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);
    for (std::size_t v = 0; v < emb_.positions.size(); ++v)
      if (emb_.vertex_active[v]) {
        priority[v] = 1.0;
        queue.push({1.0, static_cast<int>(v)});
      }
    const std::size_t budget = active * static_cast<std::size_t>(cfg_.max_sweep_passes);
    while (!queue.empty() && record.optimizations < budget) {
      const auto [p, v] = queue.top();
      queue.pop();
      if (p != priority[v]) continue;
      if (p < cfg_.global_convergence_threshold) break;
      const double moved = optimize(v);
      ++record.optimizations;
      priority[v] = 0.0;
      if (moved <= 0.0) continue;
      for (int w : neighbors(v)) {
        priority[w] += moved;
        queue.push({priority[w], w});
      }
    }
    if (trace_) {
      const StretchStats after = stretch_energy(mesh_, emb_, cfg_);
      record.energy_after = after.energy;
      record.efficiency_after = after.efficiency;
      trace_->sweeps.push_back(record);
    }
  }

  const TriangleMesh& mesh_;
  const ParamConfig& cfg_;
  ParamTrace* trace_;
  std::mt19937_64 rng_;
  SphericalEmbedding emb_;
  std::vector<std::vector<int>> incident_;
  double area_ = 0.0;
  EnergyWeights weights_;
};

}  // namespace

ParamResult parameterize(const TriangleMesh& mesh, const ParamConfig& cfg, ParamTrace* trace) {
  cfg.validate();
  const TopologyReport report = validate_topology(mesh);
  if (report.degenerate_face_count > 0) throw DomainError("parameterize: mesh has zero-area faces");
  return Parameterizer(mesh, cfg, trace).run();
}

}  // namespace sgr
