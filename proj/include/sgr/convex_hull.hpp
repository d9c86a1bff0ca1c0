#pragma once

#include <span>
#include <vector>

#include "sgr/mesh.hpp"

namespace sgr {

/// 3D convex hull (quickhull with exact orientation predicates). Returns outward-oriented
/// triangles indexing into `points`; points that are not hull vertices are not referenced.
/// Coplanar hull facets come back as several triangles. For points on the unit sphere the
/// result is the spherical Delaunay triangulation and every distinct point is a vertex.
/// Throws DomainError with fewer than four points or when all points are coplanar.
std::vector<Face> convex_hull(std::span<const Vec3> points);

}  // namespace sgr
