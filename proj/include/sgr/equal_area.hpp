#pragma once

#include <cstdint>
#include <vector>

#include "sgr/vec3.hpp"

/// Equal-area bijection between the unit square [0,1]^2 and the unit sphere.
///
/// The square is centered as (u, v) = (2s - 1, 2t - 1) and cut by the u/v axes and the
/// diagonals |u| + |v| = 1 into eight triangles:
///
///   quadrant        inner (|u|+|v| <= 1)      outer (|u|+|v| > 1)
///   u >= 0, v >= 0  north, x >= 0, y >= 0     south, x >= 0, y >= 0
///   u <  0, v >= 0  north, x <= 0, y >= 0     south, x <= 0, y >= 0
///   u <  0, v <  0  north, x <= 0, y <= 0     south, x <= 0, y <= 0
///   u >= 0, v <  0  north, x >= 0, y <= 0     south, x >= 0, y <= 0
///
/// Inner: r = |u| + |v|. Outer: r = 2 - |u| - |v|. In both cases
/// phi = pi/4 * ((|v| - |u|) / r + 1) (phi = 0 at r = 0), and the disk point lifts to
/// (cos(phi) r sqrt(2 - r^2), sin(phi) r sqrt(2 - r^2), +-(1 - r^2)) with signs of x, y taken
/// from u, v and z negative on the outer triangles.
///
/// Seams: a point on a quadrant boundary belongs to the quadrant counter-clockwise of it (the
/// +u ray to the first quadrant, +v to the second, -u to the third, -v to the fourth); the
/// diagonal itself belongs to the inner triangle. On the sphere the same rule is applied to
/// atan2(y, x) in [0, 2pi), so every sphere point has exactly one preimage. The south pole
/// maps back to the corner (1, 1); the four square corners all map to it.
namespace sgr {

struct SquarePoint {
  double s = 0.0;
  double t = 0.0;
};

struct SpherePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  Vec3 vec() const { return {x, y, z}; }
  static SpherePoint from(const Vec3& v) { return {v.x, v.y, v.z}; }
};

SpherePoint square_to_sphere(SquarePoint p);
SquarePoint sphere_to_square(SpherePoint q);

struct GridSample {
  int i = 0;  ///< column, 1..W
  int j = 0;  ///< row, 1..H
  SquarePoint square;
  SpherePoint sphere;
};

/// Samples u_ij = (i/R, j/R), i, j in [1, R], lifted to the sphere. Samples closer than
/// `weld_tolerance` on the sphere share one distinct point; `weld[k]` is the distinct-point index
/// of sample k (row-major, k = (j-1) * R + (i-1)).
struct UniformGrid {
  int resolution = 0;
  std::vector<GridSample> samples;
  std::vector<std::uint32_t> weld;
  std::vector<Vec3> distinct_points;  ///< first sample of each weld class

  std::size_t distinct_count() const { return distinct_points.size(); }
};

inline constexpr double kWeldTolerance = 1e-12;

/// Throws std::invalid_argument for R < 2.
UniformGrid uniform_grid(int resolution, double weld_tolerance = kWeldTolerance);

}  // namespace sgr
