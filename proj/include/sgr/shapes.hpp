#pragma once

#include <cstdint>

#include "sgr/mesh.hpp"

namespace sgr::shapes {

/// Regular tetrahedron inscribed in the unit sphere, outward CCW faces.
TriangleMesh tetrahedron();

/// Vertices at (+-1,0,0), (0,+-1,0), (0,0,+-1).
TriangleMesh octahedron();

/// Regular icosahedron inscribed in the unit sphere (V=12, F=20).
TriangleMesh icosahedron();

/// Loop-style 1:4 subdivision of the icosahedron, projected to the unit sphere.
/// V = 10 * 4^level + 2; level 3 gives 642 vertices.
TriangleMesh icosphere(int level);

/// Each vertex scaled radially by a factor in [1 - amplitude, 1 + amplitude], seeded.
TriangleMesh radially_deformed(const TriangleMesh& sphere_mesh, double amplitude, std::uint64_t seed);

/// Torus of genus one, `rings` x `sides` quads split into triangles.
TriangleMesh torus(int rings, int sides, double major_radius = 1.0, double minor_radius = 0.35);

}  // namespace sgr::shapes
