#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sgr/convex_hull.hpp"
#include "sgr/equal_area.hpp"
#include "sgr/errors.hpp"
#include "sgr/mesh.hpp"
#include "sgr/predicates.hpp"
#include "sgr/shapes.hpp"

using namespace sgr;

namespace {

std::vector<Vec3> random_sphere_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vec3> pts;
  while (pts.size() < n) {
    const Vec3 v{g(rng), g(rng), g(rng)};
    if (norm(v) > 1e-6) pts.push_back(normalized(v));
  }
  return pts;
}

void expect_closed_sphere(const std::vector<Vec3>& pts, const std::vector<Face>& faces) {
  const TriangleMesh m{pts, faces};
  const TopologyReport r = validate_topology(m);
  EXPECT_TRUE(r.is_watertight);
  EXPECT_TRUE(r.is_manifold);
  EXPECT_EQ(r.euler_characteristic, 2);
  EXPECT_EQ(r.vertex_count, pts.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Vec3 c = (pts[faces[f][0]] + pts[faces[f][1]] + pts[faces[f][2]]) / 3.0;
    EXPECT_GT(dot(face_normal(m, f), c), 0.0) << "face " << f << " points inward";
  }
}

}  // namespace

TEST(Predicates, Orient3dSignsAndExactZero) {
  const Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
  EXPECT_EQ(orient3d(a, b, c, {0, 0, 1}), 1);
  EXPECT_EQ(orient3d(a, b, c, {0, 0, -1}), -1);
  EXPECT_EQ(orient3d(a, b, c, {0.3, 0.7, 0}), 0);
  // Nearly coplanar: the point sits 1 ulp-ish off the plane z = 0.1 x + 0.1 y.
  const Vec3 p{1, 1, 0.2}, q{3, -2, 0.1}, r{-5, 7, 0.2};
  const Vec3 s{0.1, 0.2, 0.1 * 0.1 + 0.1 * 0.2};
  const int sign = orient3d(p, q, r, s);
  EXPECT_EQ(sign, orient3d(p, q, r, s));  // deterministic
  EXPECT_EQ(orient3d(p, q, r, s), -orient3d(q, p, r, s));
}

TEST(Predicates, OrientOriginMatchesDeterminantOnClearCases) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 10000; ++k) {
    const Vec3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, c{u(rng), u(rng), u(rng)};
    const double d = det3(a, b, c);
    if (std::abs(d) < 1e-6) continue;
    EXPECT_EQ(orient_origin(a, b, c), d > 0 ? 1 : -1);
  }
}

TEST(Predicates, ExactOnDegenerateGridPoints) {
  // Lattice points in a common plane must give exactly zero.
  for (int k = 0; k < 100; ++k) {
    const double t = k * 0.1;
    EXPECT_EQ(orient3d({0, 0, 0}, {1, 2, 3}, {2, 4, 6.5}, {t, 2 * t, 3 * t}), 0);
  }
}

TEST(ConvexHull, RegularTetrahedronHasFourFaces) {
  const TriangleMesh t = shapes::tetrahedron();
  const auto faces = convex_hull(t.vertices);
  EXPECT_EQ(faces.size(), 4u);
  expect_closed_sphere(t.vertices, faces);
}

TEST(ConvexHull, OctahedronCospherical) {
  const TriangleMesh o = shapes::octahedron();
  const auto faces = convex_hull(o.vertices);
  EXPECT_EQ(faces.size(), 8u);
  expect_closed_sphere(o.vertices, faces);
}

TEST(ConvexHull, CubeCornersWithCoplanarFacets) {
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i) pts.push_back(normalized({i & 1 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0}));
  const auto faces = convex_hull(pts);
  EXPECT_EQ(faces.size(), 12u);
  expect_closed_sphere(pts, faces);
}

TEST(ConvexHull, InteriorPointsAreNotReferenced) {
  std::vector<Vec3> pts = shapes::icosahedron().vertices;
  pts.push_back({0.1, 0.0, 0.0});
  pts.push_back({0.0, -0.2, 0.1});
  const auto faces = convex_hull(pts);
  EXPECT_EQ(faces.size(), 20u);
  for (const Face& f : faces)
    for (int v : f) EXPECT_LT(v, 12);
}

TEST(ConvexHull, ErrorsOnTooFewOrCoplanarPoints) {
  const std::vector<Vec3> three{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_THROW(convex_hull(three), DomainError);
  const std::vector<Vec3> flat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {2, 3, 0}};
  EXPECT_THROW(convex_hull(flat), DomainError);
}

TEST(ConvexHull, RandomSpherePointsAreAllVerticesAndDelaunay) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::vector<Vec3> pts = random_sphere_points(48, seed);
    const auto faces = convex_hull(pts);
    expect_closed_sphere(pts, faces);
    std::set<int> used;
    for (const Face& f : faces) used.insert(f.begin(), f.end());
    EXPECT_EQ(used.size(), pts.size());
    // Empty circumcap: no other point strictly above any face plane.
    for (const Face& f : faces)
      for (std::size_t p = 0; p < pts.size(); ++p) {
        if (int(p) == f[0] || int(p) == f[1] || int(p) == f[2]) continue;
        EXPECT_LE(oracle::plane_side(pts[f[0]], pts[f[1]], pts[f[2]], pts[p]), 0.0L) << "seed " << seed;
      }
  }
}

TEST(ConvexHull, EqualAreaGridR32) {
  const UniformGrid g = uniform_grid(32);
  const auto faces = convex_hull(g.distinct_points);
  expect_closed_sphere(g.distinct_points, faces);
  EXPECT_EQ(faces.size(), 2 * g.distinct_count() - 4);  // F = 2V - 4 for a triangulated sphere
}

TEST(ConvexHull, DeterministicOutput) {
  const std::vector<Vec3> pts = random_sphere_points(200, 99);
  EXPECT_EQ(convex_hull(pts), convex_hull(pts));
}
