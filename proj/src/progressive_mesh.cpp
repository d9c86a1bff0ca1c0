#include "sgr/progressive_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "sgr/errors.hpp"
#include "sgr/metrics.hpp"

namespace sgr {

namespace {

// Symmetric 4x4 quadric stored as its upper triangle.
struct Quadric {
  std::array<double, 10> q{};

  static Quadric plane(const Vec3& n, double d, double weight) {
    Quadric r;
    const double a = n.x, b = n.y, c = n.z;
    r.q = {a * a, a * b, a * c, a * d, b * b, b * c, b * d, c * c, c * d, d * d};
    for (double& x : r.q) x *= weight;
    return r;
  }
  Quadric& operator+=(const Quadric& o) {
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += o.q[i];
    return *this;
  }
  double eval(const Vec3& p) const {
    const double x = p.x, y = p.y, z = p.z;
    return q[0] * x * x + 2 * q[1] * x * y + 2 * q[2] * x * z + 2 * q[3] * x + q[4] * y * y + 2 * q[5] * y * z +
           2 * q[6] * y + q[7] * z * z + 2 * q[8] * z + q[9];
  }
};

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Candidate {
  double cost;
  int keep;
  int remove;
  std::uint32_t keep_version;
  std::uint32_t remove_version;
  bool operator>(const Candidate& o) const {
    if (cost != o.cost) return cost > o.cost;
    if (keep != o.keep) return keep > o.keep;
    return remove > o.remove;
  }
};

class Simplifier {
 public:
  Simplifier(const TriangleMesh& mesh, std::uint64_t seed)
      : mesh_(mesh), seed_(seed), faces_(mesh.faces), face_alive_(mesh.faces.size(), 1),
        vert_faces_(mesh.vertices.size()), version_(mesh.vertices.size(), 0), quadrics_(mesh.vertices.size()) {
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      for (int v : faces_[f]) vert_faces_[v].push_back(static_cast<int>(f));
      const Vec3 n = face_normal(mesh_, f);
      const double len = norm(n);
      if (len > 0.0) {
        const Vec3 unit = n / len;
        const Quadric q = Quadric::plane(unit, -dot(unit, mesh_.vertices[faces_[f][0]]), 0.5 * len);
        for (int v : faces_[f]) quadrics_[v] += q;
      }
    }
    alive_vertices_ = mesh.vertices.size();
    const double diag = bounding_box(mesh.vertices).diagonal();
    length_weight_ = 1e-3;
    scale_floor_ = 1e-12 * diag * diag;
  }

  ProgressiveMesh run() {
    ProgressiveMesh pm;
    pm.vertex_count = mesh_.vertices.size();
    pm.face_count = mesh_.faces.size();
    for (const auto& [a, b] : mesh_edges(mesh_)) push_edge(a, b);

    while (alive_vertices_ > 4) {
      if (queue_.empty()) {
        for (std::size_t v = 0; v < vert_faces_.size(); ++v)
          for (int w : neighbors(static_cast<int>(v)))
            if (static_cast<int>(v) < w) push_edge(static_cast<int>(v), w);
        if (queue_.empty()) throw DomainError("simplify_to_tetrahedron: no legal collapse found");
        if (stalled_) throw DomainError("simplify_to_tetrahedron: no legal collapse found");
        stalled_ = true;
        continue;
      }
      const Candidate c = queue_.top();
      queue_.pop();
      if (version_[c.keep] != c.keep_version || version_[c.remove] != c.remove_version) continue;
      if (!legal(c.keep, c.remove)) continue;
      pm.splits.push_back(collapse(c.keep, c.remove));
      stalled_ = false;
    }

    int k = 0;
    for (std::size_t v = 0; v < vert_faces_.size(); ++v)
      if (!vert_faces_[v].empty()) pm.base_vertices[k++] = static_cast<int>(v);
    for (std::size_t f = 0; f < faces_.size(); ++f)
      if (face_alive_[f]) pm.base_faces.emplace_back(static_cast<int>(f), faces_[f]);
    if (k != 4 || pm.base_faces.size() != 4) throw DomainError("simplify_to_tetrahedron: base is not a tetrahedron");
    return pm;
  }

 private:
  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (int f : vert_faces_[v])
      for (int w : faces_[f])
        if (w != v) out.push_back(w);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Faces around edge (a, b) and the apexes opposite it.
  std::vector<int> shared_faces(int a, int b) const {
    std::vector<int> out;
    for (int f : vert_faces_[a]) {
      const Face& t = faces_[f];
      if (t[0] == b || t[1] == b || t[2] == b) out.push_back(f);
    }
    return out;
  }

  bool legal(int keep, int remove) const {
    const auto shared = shared_faces(keep, remove);
    if (shared.size() != 2) return false;
    const auto nk = neighbors(keep);
    const auto nr = neighbors(remove);
    std::vector<int> common;
    std::set_intersection(nk.begin(), nk.end(), nr.begin(), nr.end(), std::back_inserter(common));
    if (common.size() != 2) return false;
    for (int f : shared)
      for (int w : faces_[f])
        if (w != keep && w != remove && std::find(common.begin(), common.end(), w) == common.end()) return false;
    return true;
  }

  double cost(int keep, int remove) const {
    const Vec3& target = mesh_.vertices[keep];
    Quadric q = quadrics_[keep];
    q += quadrics_[remove];
    const double qem = std::max(0.0, q.eval(target));
    const double len2 = norm2(mesh_.vertices[remove] - target);
    double worst_ar = 1.0;
    bool flips = false;
    for (int f : vert_faces_[remove]) {
      const Face& t = faces_[f];
      if (t[0] == keep || t[1] == keep || t[2] == keep) continue;
      std::array<Vec3, 3> before, after;
      for (int k = 0; k < 3; ++k) {
        before[k] = mesh_.vertices[t[k]];
        after[k] = t[k] == remove ? target : before[k];
      }
      const Vec3 n0 = cross(before[1] - before[0], before[2] - before[0]);
      const Vec3 n1 = cross(after[1] - after[0], after[2] - after[0]);
      if (dot(n0, n1) <= 0.0) flips = true;
      worst_ar = std::max(worst_ar, std::min(1e12, triangle_aspect_ratio(after[0], after[1], after[2])));
    }
    double c = (qem + length_weight_ * len2 + scale_floor_) * worst_ar;
    if (flips) c += 1e30;
    // Seeded relative jitter only reorders near-ties.
    const std::uint64_t h = mix64(seed_ ^ mix64((static_cast<std::uint64_t>(keep) << 32) | static_cast<std::uint32_t>(remove)));
    return c * (1.0 + 1e-9 * static_cast<double>(h >> 11) / 9007199254740992.0);
  }

  void push_edge(int a, int b) {
    queue_.push({cost(a, b), a, b, version_[a], version_[b]});
    queue_.push({cost(b, a), b, a, version_[b], version_[a]});
  }

  VertexSplit collapse(int keep, int remove) {
    VertexSplit split;
    split.parent = keep;
    split.vertex = remove;
    const auto shared = shared_faces(keep, remove);
    for (int s = 0; s < 2; ++s) {
      const int f = shared[s];
      const Face& t = faces_[f];
      split.restored_faces[s] = f;
      split.restored_triples[s] = t;
      int apex = -1;
      bool keep_then_remove = false;
      for (int k = 0; k < 3; ++k) {
        if (t[k] != keep && t[k] != remove) apex = t[k];
        if (t[k] == keep && t[(k + 1) % 3] == remove) keep_then_remove = true;
      }
      (keep_then_remove ? split.left : split.right) = apex;
    }
    for (int f : shared) {
      face_alive_[f] = 0;
      for (int w : faces_[f]) {
        auto& list = vert_faces_[w];
        list.erase(std::remove(list.begin(), list.end(), f), list.end());
      }
    }
    for (int f : vert_faces_[remove]) {
      for (int k = 0; k < 3; ++k)
        if (faces_[f][k] == remove) {
          faces_[f][k] = keep;
          split.relinked.emplace_back(f, k);
        }
      vert_faces_[keep].push_back(f);
    }
    vert_faces_[remove].clear();
    quadrics_[keep] += quadrics_[remove];
    --alive_vertices_;

    const auto ring = neighbors(keep);
    ++version_[keep];
    ++version_[remove];
    for (int w : ring) ++version_[w];
    for (int w : ring) push_edge(keep, w);
    for (int w : ring)
      for (int x : neighbors(w))
        if (x != keep) push_edge(w, x);
    return split;
  }

  const TriangleMesh& mesh_;
  std::uint64_t seed_;
  std::vector<Face> faces_;
  std::vector<std::uint8_t> face_alive_;
  std::vector<std::vector<int>> vert_faces_;
  std::vector<std::uint32_t> version_;
  std::vector<Quadric> quadrics_;
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue_;
  std::size_t alive_vertices_ = 0;
  double length_weight_ = 0.0;
  double scale_floor_ = 0.0;
  bool stalled_ = false;
};

}  // namespace

void apply_split(const VertexSplit& split, std::vector<Face>& faces, std::vector<std::uint8_t>& alive) {
  for (const auto& [f, slot] : split.relinked) {
    if (faces[f][slot] != split.parent) throw DomainError("apply_split: split does not match current connectivity");
    faces[f][slot] = split.vertex;
  }
  for (int s = 0; s < 2; ++s) {
    faces[split.restored_faces[s]] = split.restored_triples[s];
    alive[split.restored_faces[s]] = 1;
  }
}

std::vector<Face> ProgressiveMesh::replay() const {
  std::vector<Face> faces(face_count, Face{-1, -1, -1});
  std::vector<std::uint8_t> alive(face_count, 0);
  for (const auto& [f, t] : base_faces) {
    faces[f] = t;
    alive[f] = 1;
  }
  for (auto it = splits.rbegin(); it != splits.rend(); ++it) apply_split(*it, faces, alive);
  return faces;
}

ProgressiveMesh simplify_to_tetrahedron(const TriangleMesh& mesh, std::uint64_t seed) {
  const TopologyReport report = validate_topology(mesh);
  if (!report.is_watertight || !report.is_manifold || report.component_count != 1)
    throw TopologyError("simplify_to_tetrahedron: mesh must be a single closed manifold");
  if (!report.genus || *report.genus != 0) throw TopologyError("genus must be zero");
  if (mesh.vertices.size() < 4) throw TopologyError("simplify_to_tetrahedron: need at least 4 vertices");
  return Simplifier(mesh, seed).run();
}

}  // namespace sgr
