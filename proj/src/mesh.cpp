#include "sgr/mesh.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <string>
#include <unordered_map>

#include "sgr/errors.hpp"

namespace sgr {

namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

void check_indices(const TriangleMesh& mesh) {
  const auto n = static_cast<long>(mesh.vertices.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    for (int i : face)
      if (i < 0 || i >= n) throw DomainError("face references missing vertex (face " + std::to_string(f) + ")");
    if (face[0] == face[1] || face[1] == face[2] || face[2] == face[0])
      throw DomainError("degenerate face " + std::to_string(f) + " repeats a vertex index");
  }
}

bool TopologyReport::is_genus_zero_surface() const {
  return is_watertight && is_manifold && component_count == 1 && genus && *genus == 0 && degenerate_face_count == 0;
}

TopologyReport validate_topology(const TriangleMesh& mesh) {
  TopologyReport report;
  report.vertex_count = mesh.vertices.size();
  report.face_count = mesh.faces.size();
  const std::size_t nv = mesh.vertices.size();

  std::unordered_map<std::uint64_t, int> directed;    // directed edge -> multiplicity
  std::unordered_map<std::uint64_t, int> undirected;  // (min,max) -> face count
  directed.reserve(mesh.faces.size() * 3);
  undirected.reserve(mesh.faces.size() * 2);
  std::vector<char> referenced(nv, 0);
  bool indices_ok = true;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      const int a = face[k];
      const int b = face[(k + 1) % 3];
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= nv || static_cast<std::size_t>(b) >= nv || a == b) {
        indices_ok = false;
        continue;
      }
      referenced[a] = 1;
      ++directed[edge_key(a, b)];
      ++undirected[edge_key(std::min(a, b), std::max(a, b))];
    }
    if (face_area(mesh, f) <= 0.0) ++report.degenerate_face_count;
  }
  report.edge_count = undirected.size();
  for (const auto& [key, count] : undirected) {
    if (count == 1) ++report.boundary_edge_count;
    if (count > 2) ++report.nonmanifold_edge_count;
  }
  for (const auto& [key, count] : directed)
    if (count > 1) ++report.inconsistent_edge_count;
  report.isolated_vertex_count = static_cast<std::size_t>(std::count(referenced.begin(), referenced.end(), 0));

  // Vertex-manifoldness: the link of each vertex must be a single connected chain or cycle.
  std::vector<std::vector<std::pair<int, int>>> links(nv);
  if (indices_ok) {
    for (const Face& face : mesh.faces)
      for (int k = 0; k < 3; ++k) links[face[k]].emplace_back(face[(k + 1) % 3], face[(k + 2) % 3]);
  }
  for (std::size_t v = 0; v < nv; ++v) {
    const auto& link = links[v];
    if (link.empty()) continue;
    std::vector<int> ids;
    for (const auto& [a, b] : link) {
      ids.push_back(a);
      ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto local = [&](int g) { return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), g) - ids.begin()); };
    DisjointSets sets(ids.size());
    std::vector<int> degree(ids.size(), 0);
    for (const auto& [a, b] : link) {
      sets.unite(local(a), local(b));
      ++degree[local(a)];
      ++degree[local(b)];
    }
    std::size_t roots = 0;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (sets.find(i) == i) ++roots;
    const bool bad_degree = std::any_of(degree.begin(), degree.end(), [](int d) { return d > 2; });
    if (roots != 1 || bad_degree) ++report.nonmanifold_vertex_count;
  }

  DisjointSets comps(nv);
  if (indices_ok)
    for (const Face& face : mesh.faces) {
      comps.unite(face[0], face[1]);
      comps.unite(face[1], face[2]);
    }
  for (std::size_t v = 0; v < nv; ++v)
    if (referenced[v] && comps.find(v) == v) ++report.component_count;

  report.is_watertight = indices_ok && !mesh.faces.empty() && report.boundary_edge_count == 0 &&
                         report.nonmanifold_edge_count == 0;
  report.is_manifold = indices_ok && !mesh.faces.empty() && report.nonmanifold_edge_count == 0 &&
                       report.inconsistent_edge_count == 0 && report.nonmanifold_vertex_count == 0 &&
                       report.isolated_vertex_count == 0;
  report.euler_characteristic = static_cast<long>(report.vertex_count) - static_cast<long>(report.edge_count) +
                                static_cast<long>(report.face_count);
  if (report.is_watertight && report.is_manifold && report.component_count == 1)
    report.genus = static_cast<int>((2 - report.euler_characteristic) / 2);
  return report;
}

FaceAdjacency face_adjacency(const TriangleMesh& mesh) {
  std::unordered_map<std::uint64_t, std::vector<int>> incident;
  incident.reserve(mesh.faces.size() * 2);
  std::vector<std::uint64_t> order;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      const int a = face[k];
      const int b = face[(k + 1) % 3];
      const std::uint64_t key = edge_key(std::min(a, b), std::max(a, b));
      auto& list = incident[key];
      if (list.empty()) order.push_back(key);
      list.push_back(static_cast<int>(f));
      if (list.size() > 2)
        throw TopologyError("non-manifold edge (" + std::to_string(std::min(a, b)) + ", " +
                            std::to_string(std::max(a, b)) + ") has 3 or more incident faces");
    }
  }
  FaceAdjacency adj;
  for (std::uint64_t key : order) {
    const auto& list = incident[key];
    if (list.size() == 2) adj.pairs.emplace_back(list[0], list[1]);
  }
  return adj;
}

std::vector<std::pair<int, int>> mesh_edges(const TriangleMesh& mesh) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(mesh.faces.size() * 3);
  for (const Face& face : mesh.faces)
    for (int k = 0; k < 3; ++k) {
      const int a = face[k];
      const int b = face[(k + 1) % 3];
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<std::vector<int>> vertex_neighbors(const TriangleMesh& mesh) {
  std::vector<std::vector<int>> nbrs(mesh.vertices.size());
  for (const auto& [a, b] : mesh_edges(mesh)) {
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);
  }
  for (auto& list : nbrs) std::sort(list.begin(), list.end());
  return nbrs;
}

std::vector<Vec3> UniformLaplacian::apply(std::span<const Vec3> x) const {
  std::vector<Vec3> out(size);
  for (std::size_t r = 0; r < size; ++r) {
    Vec3 acc;
    for (std::size_t k = row_offsets[r]; k < row_offsets[r + 1]; ++k) acc += values[k] * x[columns[k]];
    out[r] = acc;
  }
  return out;
}

double UniformLaplacian::row_sum(std::size_t row) const {
  double s = 0.0;
  for (std::size_t k = row_offsets[row]; k < row_offsets[row + 1]; ++k) s += values[k];
  return s;
}

UniformLaplacian uniform_laplacian(const TriangleMesh& mesh) {
  const auto nbrs = vertex_neighbors(mesh);
  UniformLaplacian lap;
  lap.size = mesh.vertices.size();
  lap.row_offsets.reserve(lap.size + 1);
  lap.row_offsets.push_back(0);
  for (std::size_t i = 0; i < lap.size; ++i) {
    const auto& ring = nbrs[i];
    if (ring.empty()) throw DomainError("isolated vertex " + std::to_string(i) + " has no neighbors");
    const double w = -1.0 / static_cast<double>(ring.size());
    bool diag_done = false;
    for (int j : ring) {
      if (!diag_done && j > static_cast<int>(i)) {
        lap.columns.push_back(static_cast<int>(i));
        lap.values.push_back(1.0);
        diag_done = true;
      }
      lap.columns.push_back(j);
      lap.values.push_back(w);
    }
    if (!diag_done) {
      lap.columns.push_back(static_cast<int>(i));
      lap.values.push_back(1.0);
    }
    lap.row_offsets.push_back(lap.columns.size());
  }
  return lap;
}

Vec3 face_normal(const TriangleMesh& mesh, std::size_t f) {
  const Face& face = mesh.faces[f];
  const Vec3& a = mesh.vertices[face[0]];
  return cross(mesh.vertices[face[1]] - a, mesh.vertices[face[2]] - a);
}

double face_area(const TriangleMesh& mesh, std::size_t f) { return 0.5 * norm(face_normal(mesh, f)); }

double surface_area(const TriangleMesh& mesh) {
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) total += face_area(mesh, f);
  return total;
}

BoundingBox bounding_box(std::span<const Vec3> points) {
  BoundingBox box;
  if (points.empty()) return box;
  box.lo = box.hi = points.front();
  for (const Vec3& p : points)
    for (std::size_t k = 0; k < 3; ++k) {
      box.lo[k] = std::min(box.lo[k], p[k]);
      box.hi[k] = std::max(box.hi[k], p[k]);
    }
  return box;
}

std::uint64_t mesh_hash(const TriangleMesh& mesh) {
  std::uint64_t h = 14695981039346656037ull;
  auto feed = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  const std::uint64_t counts[2] = {mesh.vertices.size(), mesh.faces.size()};
  feed(counts, sizeof(counts));
  for (const Vec3& v : mesh.vertices) {
    const double xyz[3] = {v.x, v.y, v.z};
    feed(xyz, sizeof(xyz));
  }
  for (const Face& f : mesh.faces) {
    const std::int32_t idx[3] = {f[0], f[1], f[2]};
    feed(idx, sizeof(idx));
  }
  return h;
}

}  // namespace sgr
