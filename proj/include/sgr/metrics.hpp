#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgr/mesh.hpp"

namespace sgr {

/// q = L_max (L0 + L1 + L2) / (4 sqrt(3) A). 1 for an equilateral triangle, +inf at zero area.
double triangle_aspect_ratio(const Vec3& a, const Vec3& b, const Vec3& c);

/// Sum over adjacent face pairs of 1 - cos(angle between their normals).
/// Throws DomainError on a zero-area face.
double normals_consistency(const TriangleMesh& mesh);

/// Sum over vertices of |L v|^2 with the uniform Laplacian.
double laplacian_smoothing(const TriangleMesh& mesh);

/// Mean over edges of (|e| - e0)^2. Without an explicit e0 the mesh's mean edge length is used.
double edge_length_reg(const TriangleMesh& mesh, std::optional<double> e0 = std::nullopt);

double mean_edge_length(const TriangleMesh& mesh);

struct RegWeights {
  double alpha_nor = 0.1;
  double alpha_lap = 0.5;
  double alpha_edg = 0.1;
  std::optional<double> e0;  ///< empty: mean edge length

  /// Throws std::invalid_argument on a negative weight.
  void validate() const;
};

struct RegTerms {
  double l_nor = 0.0;
  double l_lap = 0.0;
  double l_edge = 0.0;
  double total = 0.0;
};

RegTerms geometric_reg_terms(const TriangleMesh& mesh, const RegWeights& weights);
double geometric_reg_total(const TriangleMesh& mesh, const RegWeights& weights);

struct AspectRatioStats {
  std::vector<double> per_face;
  double mean = 0.0;  ///< +inf when any face is degenerate
  double max = 0.0;
  std::size_t degenerate_count = 0;
};

AspectRatioStats aspect_ratio(const TriangleMesh& mesh);

inline constexpr std::size_t kDefaultChamferSamples = 100000;

/// Nearest-surface distances of area-uniform samples, both directions. Sample k of each mesh
/// depends only on (seed, k), so results do not depend on evaluation order.
struct SurfaceDistances {
  std::vector<double> a_to_b;
  std::vector<double> b_to_a;
};

/// Throws DomainError when either mesh has zero total area.
SurfaceDistances surface_distances(const TriangleMesh& a, const TriangleMesh& b, std::size_t samples,
                                   std::uint64_t seed);

double chamfer_distance(const SurfaceDistances& d);
double f_score(const SurfaceDistances& d, double tau);

/// Mean of the two directed mean distances.
double chamfer_distance(const TriangleMesh& a, const TriangleMesh& b, std::size_t samples = kDefaultChamferSamples,
                        std::uint64_t seed = 0);
/// Harmonic mean of precision and recall at threshold tau, in percent.
double f_score(const TriangleMesh& a, const TriangleMesh& b, double tau, std::size_t samples = kDefaultChamferSamples,
               std::uint64_t seed = 0);

/// Area-uniform points on a mesh surface.
std::vector<Vec3> sample_surface(const TriangleMesh& mesh, std::size_t samples, std::uint64_t seed);

/// Exact point-to-surface distance via a bounding volume hierarchy over the triangles.
class SurfaceDistance {
 public:
  explicit SurfaceDistance(const TriangleMesh& mesh);
  double operator()(const Vec3& p) const;

 private:
  struct Node {
    Vec3 lo, hi;
    int left = -1;  // child index, or -1 for a leaf
    int right = -1;
    int begin = 0;
    int end = 0;
  };
  int build(int begin, int end);

  std::vector<std::array<Vec3, 3>> tris_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

struct MetricsReport {
  std::string label;
  double l_nor = 0.0;
  double l_lap = 0.0;
  double l_edge = 0.0;
  double reg_total = 0.0;
  double aspect_ratio_mean = 0.0;
  double aspect_ratio_max = 0.0;
  std::optional<double> chamfer_mm;
  std::optional<double> f_score_pct;
  std::optional<double> tau_mm;
  std::size_t vertex_count = 0;
  std::size_t face_count = 0;
  RegWeights weights;

  std::string to_key_value() const;
};

MetricsReport single_mesh_metrics(const TriangleMesh& mesh, const RegWeights& weights);

}  // namespace sgr
