#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sgr/vec3.hpp"

namespace sgr {

/// Vertex-index triple. Counter-clockwise order when seen from outside.
using Face = std::array<int, 3>;

/// Indexed triangle surface. Positions are in model units (treated as millimeters for reporting).
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t face_count() const { return faces.size(); }
};

/// Throws DomainError when a face references a missing vertex or repeats an index.
void check_indices(const TriangleMesh& mesh);

struct TopologyReport {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t face_count = 0;
  bool is_watertight = false;
  /// Edge- and vertex-manifold with consistently oriented faces.
  bool is_manifold = false;
  std::size_t boundary_edge_count = 0;
  std::size_t nonmanifold_edge_count = 0;
  std::size_t inconsistent_edge_count = 0;
  std::size_t nonmanifold_vertex_count = 0;
  std::size_t isolated_vertex_count = 0;
  std::size_t degenerate_face_count = 0;  ///< zero-area faces
  std::size_t component_count = 0;
  long euler_characteristic = 0;
  /// (2 - chi) / 2 for a closed, connected manifold. Empty otherwise.
  std::optional<int> genus;

  /// True for a single closed, manifold, genus-zero surface without zero-area faces.
  bool is_genus_zero_surface() const;
};

TopologyReport validate_topology(const TriangleMesh& mesh);

/// Pairs of faces sharing an edge, each unordered pair listed once.
struct FaceAdjacency {
  std::vector<std::pair<int, int>> pairs;
};

/// Throws TopologyError on an edge with three or more incident faces.
FaceAdjacency face_adjacency(const TriangleMesh& mesh);

/// Undirected edges (a < b), sorted.
std::vector<std::pair<int, int>> mesh_edges(const TriangleMesh& mesh);

/// Sorted neighbor lists per vertex.
std::vector<std::vector<int>> vertex_neighbors(const TriangleMesh& mesh);

/// Row-major sparse L = I - D^-1 A.
struct UniformLaplacian {
  std::size_t size = 0;
  std::vector<std::size_t> row_offsets;  // size + 1 entries
  std::vector<int> columns;
  std::vector<double> values;

  std::vector<Vec3> apply(std::span<const Vec3> x) const;
  double row_sum(std::size_t row) const;
};

/// Throws DomainError on an isolated vertex.
UniformLaplacian uniform_laplacian(const TriangleMesh& mesh);

Vec3 face_normal(const TriangleMesh& mesh, std::size_t f);  ///< unnormalized, |n| = 2 * area
double face_area(const TriangleMesh& mesh, std::size_t f);
double surface_area(const TriangleMesh& mesh);

struct BoundingBox {
  Vec3 lo;
  Vec3 hi;
  double diagonal() const { return distance(lo, hi); }
};
BoundingBox bounding_box(std::span<const Vec3> points);

/// FNV-1a over vertex coordinates and face indices; identifies a mesh in sidecar files.
std::uint64_t mesh_hash(const TriangleMesh& mesh);

}  // namespace sgr
