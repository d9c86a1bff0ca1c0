#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "sgr/mesh.hpp"
#include "sgr/progressive_mesh.hpp"

namespace sgr {

/// Unit-sphere position per source vertex. During coarse-to-fine replay only part of the mesh is
/// live: `faces` is indexed by source face id and holds the current connectivity, and the active
/// flags say which vertices and faces exist at this level.
struct SphericalEmbedding {
  std::vector<Vec3> positions;
  std::vector<Face> faces;
  std::vector<std::uint8_t> vertex_active;
  std::vector<std::uint8_t> face_active;
  std::uint64_t source_hash = 0;

  std::size_t active_vertex_count() const;
  bool complete() const;

  /// Fully active embedding with the mesh's own connectivity.
  static SphericalEmbedding from_positions(const TriangleMesh& mesh, std::vector<Vec3> positions);
};

/// Number of active faces with det[s_a, s_b, s_c] <= 0 (exact sign).
std::size_t count_flipped(const SphericalEmbedding& embedding);

/// Intersection of the open hemispheres { x : n_e . x > 0 }.
struct KernelRegion {
  std::vector<Vec3> half_space_normals;
  bool is_empty = true;
  Vec3 representative;  ///< strictly inside when non-empty

  /// Exact test of x . (a x b) > 0 for every edge that produced a normal.
  bool contains(const Vec3& x) const;

  std::vector<std::pair<Vec3, Vec3>> edges;
};

/// Kernel of a closed spherical polygon with edges r_e -> r_{e+1}.
/// Throws DomainError for fewer than 3 points or identical / antipodal consecutive points.
KernelRegion polygon_kernel(std::span<const Vec3> ring);

/// Kernel of an unordered set of directed edges (each face (x, a, b) around a vertex gives a -> b).
/// `hint`, when given, seeds the fallback search.
KernelRegion edge_kernel(std::vector<std::pair<Vec3, Vec3>> edges, const Vec3* hint = nullptr);

/// Regular tetrahedron on the unit sphere, oriented to match the base faces.
SphericalEmbedding embed_base(const ProgressiveMesh& pm);

/// Applies `split` to the embedding's connectivity and places the new vertex inside the kernel
/// of its ring. Throws DomainError when the kernel is empty.
void insert_vertex(SphericalEmbedding& embedding, const VertexSplit& split);

/// Singular values (largest, smallest) of the linear map from the sphere triangle, projected onto
/// the tangent plane at its normalized centroid, to the mesh triangle. Throws DomainError when
/// either triangle has zero area.
std::pair<double, double> face_stretch(const std::array<Vec3, 3>& mesh_triangle,
                                       const std::array<Vec3, 3>& sphere_triangle);

struct ParamConfig {
  double epsilon = 1e-3;
  int p = 4;
  int directions_per_pass = 8;
  double local_tolerance = 1e-6;  ///< great-circle arc length
  double global_sweep_growth_factor = 1.5;
  double global_convergence_threshold = 1e-5;
  std::uint64_t rng_seed = 0;
  int max_line_search_iterations = 50;
  bool enable_global_sweeps = true;
  /// Upper bound on vertex optimizations per sweep, as a multiple of the active vertex count.
  int max_sweep_passes = 20;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct StretchStats {
  double l2_stretch = 0.0;
  double linf_stretch = 0.0;
  double efficiency = 0.0;
  /// L2^2 plus the regularizer; +infinity for an invalid embedding.
  double energy = 0.0;
  /// Area-weighted sum of (1/gamma)^p over faces; the regularizer is
  /// epsilon * (A_M / 4pi)^(p/2 + 1) * regularizer_sum.
  double regularizer_sum = 0.0;
  double regularizer_scale = 0.0;
  double surface_area = 0.0;
  double domain_area = 0.0;  ///< total area of the flattened sphere triangles
  bool valid = false;
  std::vector<std::pair<double, double>> per_face_singular_values;
};

/// Stretch of the embedding's active faces against the mesh positions.
StretchStats stretch_energy(const TriangleMesh& mesh, const SphericalEmbedding& embedding, const ParamConfig& cfg);

/// Great-circle line searches in random directions, each constrained to the 1-ring kernel.
/// A move is kept only when the summed energy of the incident faces strictly drops.
/// Returns the arc length travelled.
double optimize_vertex(SphericalEmbedding& embedding, int vertex, const TriangleMesh& mesh, const ParamConfig& cfg,
                       std::mt19937_64& rng);

/// Sum of the per-face energies around `vertex` (same units as StretchStats::energy times A_M).
double local_energy(const SphericalEmbedding& embedding, int vertex, const TriangleMesh& mesh, const ParamConfig& cfg);

struct SweepRecord {
  std::size_t active_vertices = 0;
  double energy_before = 0.0;
  double energy_after = 0.0;
  double efficiency_after = 0.0;
  std::size_t optimizations = 0;
};

/// Optional instrumentation of a parameterize run.
struct ParamTrace {
  std::vector<std::size_t> flipped_after_step;  ///< after every insertion + local optimization
  std::vector<double> efficiency_after_step;    ///< same steps as flipped_after_step
  std::vector<SweepRecord> sweeps;
  double efficiency_before_sweeps = 0.0;  ///< after the final insertion, before the closing sweep
};

struct ParamResult {
  SphericalEmbedding embedding;
  StretchStats stats;
};

/// Simplify, embed the base, replay splits with kernel insertion and local optimization, and run
/// global sweeps whenever the vertex count has grown by the configured factor (plus once at the end).
/// Throws TopologyError for non-genus-zero input and DomainError if an embedding check fails.
ParamResult parameterize(const TriangleMesh& mesh, const ParamConfig& cfg, ParamTrace* trace = nullptr);

}  // namespace sgr
