#pragma once

#include <array>
#include <vector>

#include "sgr/sphere_param.hpp"

namespace sgr {

struct BarycentricHit {
  int face_index = -1;
  std::array<double, 3> lambda{};  ///< weights of the face's vertices in slot order
};

/// Uniform grid over [-1, 1]^3. Each active face is binned into every cell touched by the ball
/// that bounds its spherical cap, so a query only scans the faces of its own cell.
/// Among faces containing the query (boundary included) the lowest face index wins, which makes
/// results identical to locate_brute_force. The embedding must outlive the locator.
class TriangleLocator {
 public:
  /// Throws DomainError if the embedding has a flipped or degenerate active face.
  explicit TriangleLocator(const SphericalEmbedding& embedding);

  BarycentricHit locate(const Vec3& s) const;
  int resolution() const { return n_; }

 private:
  std::size_t cell_of(const Vec3& p) const;

  const SphericalEmbedding* emb_;
  int n_ = 1;
  std::vector<std::size_t> offsets_;
  std::vector<int> items_;
};

inline TriangleLocator build_locator(const SphericalEmbedding& embedding) { return TriangleLocator(embedding); }

/// True when s lies in the closed spherical triangle (a, b, c) (exact signs).
bool spherical_triangle_contains(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& s);

/// Lowest-index active face containing s, scanning every face.
BarycentricHit locate_brute_force(const SphericalEmbedding& embedding, const Vec3& s);

}  // namespace sgr
