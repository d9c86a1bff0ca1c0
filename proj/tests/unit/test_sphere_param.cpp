#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sgr/errors.hpp"
#include "sgr/predicates.hpp"
#include "sgr/shapes.hpp"
#include "sgr/sphere_param.hpp"

using namespace sgr;

namespace {

// Sphere triangle projected onto the tangent plane at its normalized centroid.
std::array<Vec3, 3> tangent_projection(const std::array<Vec3, 3>& s) {
  const Vec3 c = normalized(s[0] + s[1] + s[2]);
  std::array<Vec3, 3> out;
  for (int k = 0; k < 3; ++k) out[k] = s[k] - c * dot(s[k], c);
  return out;
}

// Singular values of the map from the projected sphere triangle to the mesh triangle, each
// flattened in an explicit in-plane frame and inverted as a 2x2 matrix.
std::pair<double, double> frame_singular_values(const std::array<Vec3, 3>& m, const std::array<Vec3, 3>& sphere) {
  const std::array<Vec3, 3> s = tangent_projection(sphere);
  auto flatten = [](const std::array<Vec3, 3>& t, double out[2][2]) {
    const Vec3 e1 = normalized(t[1] - t[0]);
    const Vec3 e2 = normalized(cross(cross(t[1] - t[0], t[2] - t[0]), e1));
    for (int k = 0; k < 2; ++k) {
      out[0][k] = dot(t[k + 1] - t[0], e1);
      out[1][k] = dot(t[k + 1] - t[0], e2);
    }
  };
  double p[2][2], q[2][2];
  flatten(s, p);
  flatten(m, q);
  const double det_p = p[0][0] * p[1][1] - p[0][1] * p[1][0];
  const double inv[2][2] = {{p[1][1] / det_p, -p[0][1] / det_p}, {-p[1][0] / det_p, p[0][0] / det_p}};
  double j[2][2];
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) j[r][c] = q[r][0] * inv[0][c] + q[r][1] * inv[1][c];
  const double sum = j[0][0] * j[0][0] + j[0][1] * j[0][1] + j[1][0] * j[1][0] + j[1][1] * j[1][1];
  const double det = std::abs(j[0][0] * j[1][1] - j[0][1] * j[1][0]);
  const double root = std::sqrt(std::max(0.0, sum * sum - 4 * det * det));
  return {std::sqrt((sum + root) / 2), std::sqrt(std::max(0.0, (sum - root) / 2))};
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) { return 0.5 * norm(cross(b - a, c - a)); }

// Efficiency from the frame oracle: (A_M / A_D) / L2^2 with L2^2 = sum A_T (G^2 + g^2) / 2 / A_M
// and A_D the total projected sphere-triangle area.
double oracle_efficiency(const TriangleMesh& mesh, const std::vector<Vec3>& pos) {
  double am = 0, ad = 0, l2 = 0;
  for (const Face& f : mesh.faces) {
    const std::array<Vec3, 3> m{mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]};
    const std::array<Vec3, 3> s{pos[f[0]], pos[f[1]], pos[f[2]]};
    const auto [g1, g2] = frame_singular_values(m, s);
    const double at = triangle_area(m[0], m[1], m[2]);
    am += at;
    const std::array<Vec3, 3> flat = tangent_projection(s);
    ad += triangle_area(flat[0], flat[1], flat[2]);
    l2 += at * (g1 * g1 + g2 * g2) / 2;
  }
  return (am / ad) / (l2 / am);
}

std::vector<Vec3> normalized_positions(const TriangleMesh& m) {
  std::vector<Vec3> p;
  for (const Vec3& v : m.vertices) p.push_back(normalized(v));
  return p;
}

Vec3 rotate_towards(const Vec3& x, const Vec3& dir, double angle) {
  const Vec3 t = normalized(dir - x * dot(dir, x));
  return normalized(x * std::cos(angle) + t * std::sin(angle));
}

std::vector<Vec3> tangent_ring(const Vec3& center, const std::vector<std::pair<double, double>>& uv) {
  const Vec3 e1 = normalized(any_perpendicular(center));
  const Vec3 e2 = cross(center, e1);
  std::vector<Vec3> ring;
  for (const auto& [u, v] : uv) ring.push_back(normalized(center + e1 * u + e2 * v));
  return ring;
}

}  // namespace

TEST(EmbedBase, RegularTetrahedronPositiveOrientation) {
  const ProgressiveMesh pm = simplify_to_tetrahedron(shapes::icosphere(1), 2);
  const SphericalEmbedding e = embed_base(pm);
  for (int a = 0; a < 4; ++a) {
    const Vec3& pa = e.positions[pm.base_vertices[a]];
    EXPECT_NEAR(norm(pa), 1.0, 1e-15);
    for (int b = a + 1; b < 4; ++b) EXPECT_NEAR(dot(pa, e.positions[pm.base_vertices[b]]), -1.0 / 3.0, 1e-15);
  }
  for (const auto& [id, f] : pm.base_faces)
    EXPECT_GT(orient_origin(e.positions[f[0]], e.positions[f[1]], e.positions[f[2]]), 0);
  EXPECT_EQ(count_flipped(e), 0u);
  EXPECT_EQ(e.active_vertex_count(), 4u);
}

TEST(EmbedBase, Deterministic) {
  const ProgressiveMesh pm = simplify_to_tetrahedron(shapes::icosahedron());
  const SphericalEmbedding a = embed_base(pm), b = embed_base(pm);
  EXPECT_EQ(a.positions, b.positions);
  EXPECT_EQ(a.faces, b.faces);
}

TEST(PolygonKernel, EquilateralAroundNorthPole) {
  const Vec3 n{0, 0, 1};
  std::vector<Vec3> ring;
  for (int k = 0; k < 3; ++k) {
    const double a = 2 * std::numbers::pi * k / 3;
    ring.push_back(normalized({0.5 * std::cos(a), 0.5 * std::sin(a), 1.0}));
  }
  const KernelRegion k = polygon_kernel(ring);
  EXPECT_FALSE(k.is_empty);
  EXPECT_TRUE(k.contains(n));
  EXPECT_TRUE(k.contains(k.representative));
  ASSERT_EQ(k.half_space_normals.size(), 3u);
  for (const Vec3& h : k.half_space_normals) EXPECT_NEAR(norm(h), 1.0, 1e-15);
}

TEST(PolygonKernel, ConvexRingsContainTheirCentroid) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 center = normalized({g(rng), g(rng), g(rng)});
    const int n = 3 + int(u(rng) * 6);
    std::vector<double> angles;
    for (int k = 0; k < n; ++k) angles.push_back(2 * std::numbers::pi * (k + 0.4 * u(rng)) / n);
    std::vector<std::pair<double, double>> uv;
    const double radius = 0.05 + 0.4 * u(rng);
    for (double a : angles) uv.push_back({radius * std::cos(a), radius * std::sin(a)});
    const std::vector<Vec3> ring = tangent_ring(center, uv);
    const KernelRegion k = polygon_kernel(ring);
    Vec3 witness;
    ASSERT_TRUE(oracle::ring_kernel_feasible(ring, 200000, &witness));
    ASSERT_FALSE(k.is_empty);
    EXPECT_TRUE(k.contains(k.representative));
    Vec3 mean;
    for (const Vec3& r : ring) mean += r;
    mean = normalized(mean);
    EXPECT_TRUE(k.contains(mean));
    // The representative satisfies the half-space test computed independently.
    for (std::size_t e = 0; e < ring.size(); ++e)
      EXPECT_GT(dot(cross(ring[e], ring[(e + 1) % ring.size()]), k.representative), 0.0);
  }
}

TEST(PolygonKernel, NonConvexStarIsStillFeasible) {
  // A star-shaped ring whose kernel is a small region around the center.
  std::vector<std::pair<double, double>> uv;
  for (int k = 0; k < 10; ++k) {
    const double a = 2 * std::numbers::pi * k / 10, r = k % 2 ? 0.1 : 0.3;
    uv.push_back({r * std::cos(a), r * std::sin(a)});
  }
  const std::vector<Vec3> ring = tangent_ring(normalized({1, 2, 2}), uv);
  ASSERT_TRUE(oracle::ring_kernel_feasible(ring, 400000));
  const KernelRegion k = polygon_kernel(ring);
  EXPECT_FALSE(k.is_empty);
  EXPECT_TRUE(k.contains(k.representative));
}

TEST(PolygonKernel, BowtieIsEmpty) {
  const std::vector<Vec3> ring = tangent_ring(normalized({0.3, -0.2, 1.0}), {{-0.3, -0.3}, {0.3, 0.3}, {0.3, -0.3}, {-0.3, 0.3}});
  EXPECT_FALSE(oracle::ring_kernel_feasible(ring, 400000));
  EXPECT_TRUE(polygon_kernel(ring).is_empty);
}

TEST(PolygonKernel, DegenerateRingsAreErrors) {
  const Vec3 a{1, 0, 0}, b{0, 1, 0}, c{0, 0, 1};
  EXPECT_THROW(polygon_kernel(std::vector<Vec3>{a, b}), DomainError);
  EXPECT_THROW(polygon_kernel(std::vector<Vec3>{a, a, c}), DomainError);
  EXPECT_THROW(polygon_kernel(std::vector<Vec3>{a, -a, c}), DomainError);
}

TEST(InsertVertex, ReplayKeepsEmbeddingValid) {
  const TriangleMesh m = shapes::radially_deformed(shapes::icosphere(2), 0.15, 9);
  const ProgressiveMesh pm = simplify_to_tetrahedron(m, 0);
  SphericalEmbedding e = embed_base(pm);
  std::size_t faces = 4;
  for (auto it = pm.splits.rbegin(); it != pm.splits.rend(); ++it) {
    const std::size_t before = e.active_vertex_count();
    insert_vertex(e, *it);
    faces += 2;
    ASSERT_EQ(e.active_vertex_count(), before + 1);
    ASSERT_EQ(std::size_t(std::count(e.face_active.begin(), e.face_active.end(), 1)), faces);
    ASSERT_EQ(count_flipped(e), 0u);
    ASSERT_NEAR(norm(e.positions[it->vertex]), 1.0, 1e-12);
  }
  EXPECT_TRUE(e.complete());
  EXPECT_EQ(e.faces, m.faces);
}

TEST(InsertVertex, EmptyKernelIsAnError) {
  const TriangleMesh m = shapes::icosahedron();
  const ProgressiveMesh pm = simplify_to_tetrahedron(m);
  const VertexSplit& split = pm.splits.back();  // first split replayed from the base
  SphericalEmbedding base = embed_base(pm);

  // Directed ring edges of the new vertex after the split.
  std::vector<Face> faces = base.faces;
  std::vector<std::uint8_t> alive = base.face_active;
  apply_split(split, faces, alive);
  std::vector<std::pair<int, int>> ring_edges;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (!alive[f]) continue;
    for (int c = 0; c < 3; ++c)
      if (faces[f][c] == split.vertex) ring_edges.push_back({faces[f][(c + 1) % 3], faces[f][(c + 2) % 3]});
  }
  ASSERT_GE(ring_edges.size(), 3u);

  // Put the base vertices on the equator so every edge normal is +-z, and pick an assignment of
  // angles for which the ring doubles back on itself.
  std::array<double, 4> angles{0.0, 0.7, 1.4, 2.1};
  bool found = false;
  do {
    SphericalEmbedding e = base;
    for (int k = 0; k < 4; ++k) e.positions[pm.base_vertices[k]] = {std::cos(angles[k]), std::sin(angles[k]), 0.0};
    // Order the ring by chaining edges.
    std::vector<Vec3> ring;
    int at = ring_edges[0].first;
    for (std::size_t n = 0; n < ring_edges.size(); ++n) {
      ring.push_back(e.positions[at]);
      for (const auto& [a, b] : ring_edges)
        if (a == at) {
          at = b;
          break;
        }
    }
    if (oracle::ring_kernel_feasible(ring, 200000)) continue;
    found = true;
    EXPECT_THROW(insert_vertex(e, split), DomainError);
    break;
  } while (std::next_permutation(angles.begin(), angles.end()));
  EXPECT_TRUE(found);
}

TEST(FaceStretch, IdentityScaleAndAxisStretch) {
  const std::array<Vec3, 3> s{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  auto [g1, g2] = face_stretch(s, s);
  EXPECT_NEAR(g1, 1.0, 1e-12);
  EXPECT_NEAR(g2, 1.0, 1e-12);

  const std::array<Vec3, 3> doubled{s[0] * 2.0, s[1] * 2.0, s[2] * 2.0};
  std::tie(g1, g2) = face_stretch(doubled, s);
  EXPECT_NEAR(g1, 2.0, 1e-12);
  EXPECT_NEAR(g2, 2.0, 1e-12);

  // Flatten the sphere triangle in a frame, stretch x3 along the first axis, place in the xy plane.
  const Vec3 e1 = normalized(s[1] - s[0]);
  const Vec3 e2 = normalized(cross(cross(s[1] - s[0], s[2] - s[0]), e1));
  std::array<Vec3, 3> stretched;
  for (int k = 0; k < 3; ++k) stretched[k] = {3.0 * dot(s[k] - s[0], e1), dot(s[k] - s[0], e2), 0.0};
  std::tie(g1, g2) = face_stretch(stretched, s);
  EXPECT_NEAR(g1, 3.0, 1e-12);
  EXPECT_NEAR(g2, 1.0, 1e-12);
}

TEST(FaceStretch, MatchesFrameOracleOnRandomTriangles) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    std::array<Vec3, 3> m, s;
    for (int c = 0; c < 3; ++c) {
      m[c] = {g(rng), g(rng), g(rng)};
      s[c] = normalized({g(rng), g(rng), g(rng)});
    }
    const auto [a1, a2] = face_stretch(m, s);
    const auto [b1, b2] = frame_singular_values(m, s);
    EXPECT_NEAR(a1, b1, 1e-8 * b1);
    EXPECT_NEAR(a2, b2, 1e-8 * b1);
    EXPECT_GE(a1, a2);
  }
}

TEST(FaceStretch, GrowsWithoutBoundAsSphereTriangleDegenerates) {
  // Three points sliding onto one great circle: the chord triangle keeps its area but the
  // spherical triangle collapses, and so must the flattened domain.
  const std::array<Vec3, 3> m{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}};
  double last = 0.0;
  for (double h : {1e-1, 1e-3, 1e-5, 1e-7}) {
    const std::array<Vec3, 3> s{normalized({1, 0, 0}), normalized({0, 1, h}), normalized({-1, 0.2, 0})};
    const double big = face_stretch(m, s).first;
    EXPECT_GT(big, 10 * last);
    last = big;
  }
}

TEST(FaceStretch, ZeroAreaIsAnError) {
  const std::array<Vec3, 3> s{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  const std::array<Vec3, 3> flat{Vec3{0, 0, 0}, Vec3{1, 1, 1}, Vec3{2, 2, 2}};
  EXPECT_THROW(face_stretch(flat, s), DomainError);
  EXPECT_THROW(face_stretch(s, flat), DomainError);
}

TEST(StretchEnergy, IcosphereOwnPositionsIsNearIsometric) {
  const TriangleMesh m = shapes::icosphere(3);
  const SphericalEmbedding e = SphericalEmbedding::from_positions(m, normalized_positions(m));
  const StretchStats st = stretch_energy(m, e, ParamConfig{});
  EXPECT_TRUE(st.valid);
  EXPECT_GE(st.efficiency, 0.99);
  EXPECT_LE(st.efficiency, 1.0 + 1e-9);
  EXPECT_NEAR(st.efficiency, oracle_efficiency(m, e.positions), 1e-9);
  ASSERT_EQ(st.per_face_singular_values.size(), m.faces.size());
  for (const auto& [big, small] : st.per_face_singular_values) {
    EXPECT_GE(big, small);
    EXPECT_GT(small, 0.0);
  }
}

TEST(StretchEnergy, EfficiencyMatchesOracleOnDeformedMesh) {
  const TriangleMesh sphere = shapes::icosphere(2);
  const TriangleMesh m = shapes::radially_deformed(sphere, 0.2, 4);
  const SphericalEmbedding e = SphericalEmbedding::from_positions(m, normalized_positions(sphere));
  const StretchStats st = stretch_energy(m, e, ParamConfig{});
  EXPECT_NEAR(st.efficiency, oracle_efficiency(m, e.positions), 1e-9);
  EXPECT_LT(st.efficiency, 1.0);
}

TEST(StretchEnergy, FlippedFaceGivesInfinity) {
  const TriangleMesh m = shapes::icosphere(1);
  std::vector<Vec3> pos = normalized_positions(m);
  pos[0] = -pos[0];
  const SphericalEmbedding e = SphericalEmbedding::from_positions(m, pos);
  EXPECT_GT(count_flipped(e), 0u);
  const StretchStats st = stretch_energy(m, e, ParamConfig{});
  EXPECT_FALSE(st.valid);
  EXPECT_TRUE(std::isinf(st.energy));
  EXPECT_GT(st.energy, 0.0);
}

TEST(StretchEnergy, LinearInEpsilon) {
  const TriangleMesh sphere = shapes::icosphere(2);
  const TriangleMesh m = shapes::radially_deformed(sphere, 0.2, 6);
  const SphericalEmbedding e = SphericalEmbedding::from_positions(m, normalized_positions(sphere));
  ParamConfig a, b;
  a.epsilon = 0.01;
  b.epsilon = 0.02;
  const StretchStats sa = stretch_energy(m, e, a), sb = stretch_energy(m, e, b);
  const double expected = a.epsilon * sa.regularizer_scale * sa.regularizer_sum;
  EXPECT_NEAR(sb.energy - sa.energy, expected, 1e-12 * sb.energy);

  // Independent check of the scale and the area-weighted inverse-stretch sum.
  EXPECT_NEAR(sa.regularizer_scale, std::pow(sa.surface_area / (4 * std::numbers::pi), a.p / 2.0 + 1), 1e-12);
  double sum = 0.0, area = 0.0;
  for (const Face& f : m.faces) {
    const std::array<Vec3, 3> mt{m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]};
    const std::array<Vec3, 3> st{e.positions[f[0]], e.positions[f[1]], e.positions[f[2]]};
    const double at = triangle_area(mt[0], mt[1], mt[2]);
    sum += at * std::pow(1.0 / frame_singular_values(mt, st).second, a.p);
    area += at;
  }
  EXPECT_NEAR(sa.regularizer_sum, sum / area, 1e-9 * sum / area);
}

TEST(OptimizeVertex, SymmetricVertexStaysPut) {
  const TriangleMesh m = shapes::icosahedron();
  SphericalEmbedding e = SphericalEmbedding::from_positions(m, normalized_positions(m));
  const Vec3 before = e.positions[0];
  std::mt19937_64 rng(1);
  const ParamConfig cfg;
  optimize_vertex(e, 0, m, cfg, rng);
  EXPECT_LE(std::acos(std::clamp(dot(before, e.positions[0]), -1.0, 1.0)), cfg.local_tolerance);
}

TEST(OptimizeVertex, PerturbedVertexRecovers) {
  const TriangleMesh m = shapes::icosphere(2);
  const ParamConfig cfg;
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int v : {0, 15, 40, 100, 150}) {
    SphericalEmbedding e = SphericalEmbedding::from_positions(m, normalized_positions(m));
    const double e0 = local_energy(e, v, m, cfg);
    e.positions[v] = rotate_towards(e.positions[v], {g(rng), g(rng), g(rng)}, 0.03);
    ASSERT_EQ(count_flipped(e), 0u);
    const double e1 = local_energy(e, v, m, cfg);
    ASSERT_GT(e1, e0);
    for (int pass = 0; pass < 3; ++pass) optimize_vertex(e, v, m, cfg, rng);
    const double e2 = local_energy(e, v, m, cfg);
    EXPECT_LT(e2, e1);
    EXPECT_LT(e2 - e0, 0.1 * (e1 - e0)) << "vertex " << v;
    EXPECT_EQ(count_flipped(e), 0u);
  }
}

TEST(OptimizeVertex, NeverIncreasesEnergyOrFlips) {
  const TriangleMesh sphere = shapes::icosphere(2);
  const TriangleMesh m = shapes::radially_deformed(sphere, 0.2, 13);
  SphericalEmbedding e = SphericalEmbedding::from_positions(m, normalized_positions(sphere));
  ParamConfig cfg;
  std::mt19937_64 rng(5);
  double total = stretch_energy(m, e, cfg).energy;
  for (int round = 0; round < 3; ++round)
    for (int v = 0; v < int(m.vertices.size()); ++v) {
      const double before = local_energy(e, v, m, cfg);
      optimize_vertex(e, v, m, cfg, rng);
      ASSERT_LE(local_energy(e, v, m, cfg), before);
      ASSERT_EQ(count_flipped(e), 0u);
    }
  EXPECT_LT(stretch_energy(m, e, cfg).energy, total);
}

TEST(ParamConfig, Validation) {
  ParamConfig c;
  EXPECT_NO_THROW(c.validate());
  c.p = 3;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.epsilon = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.global_sweep_growth_factor = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.directions_per_pass = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Parameterize, IcosphereIsNearIsometricAndNeverFlips) {
  const TriangleMesh m = shapes::icosphere(3);
  ASSERT_EQ(m.vertices.size(), 642u);
  ParamTrace trace;
  const ParamResult r = parameterize(m, ParamConfig{}, &trace);
  EXPECT_TRUE(r.embedding.complete());
  EXPECT_EQ(count_flipped(r.embedding), 0u);
  EXPECT_GE(r.stats.efficiency, 0.99);
  EXPECT_LE(r.stats.efficiency, 1.0 + 1e-9);
  EXPECT_NEAR(r.stats.efficiency, oracle_efficiency(m, r.embedding.positions), 1e-9);
  EXPECT_EQ(trace.flipped_after_step.size(), m.vertices.size() - 4);
  EXPECT_EQ(std::count_if(trace.flipped_after_step.begin(), trace.flipped_after_step.end(),
                          [](std::size_t n) { return n != 0; }),
            0);
  for (const Vec3& p : r.embedding.positions) EXPECT_NEAR(norm(p), 1.0, 1e-9);
  EXPECT_EQ(r.embedding.faces, m.faces);
}

TEST(Parameterize, SweepsImproveDeformedIcosphere) {
  const TriangleMesh m = shapes::radially_deformed(shapes::icosphere(3), 0.2, 21);
  ParamConfig without;
  without.enable_global_sweeps = false;
  ParamTrace trace;
  const ParamResult a = parameterize(m, without);
  const ParamResult b = parameterize(m, ParamConfig{}, &trace);
  EXPECT_EQ(count_flipped(a.embedding), 0u);
  EXPECT_EQ(count_flipped(b.embedding), 0u);
  EXPECT_GT(b.stats.efficiency, a.stats.efficiency);
  EXPECT_GT(b.stats.efficiency, trace.efficiency_before_sweeps);
  ASSERT_FALSE(trace.sweeps.empty());
  for (const SweepRecord& s : trace.sweeps) EXPECT_LE(s.energy_after, s.energy_before);
}

TEST(Parameterize, SeededRunsAreBitIdentical) {
  const TriangleMesh m = shapes::radially_deformed(shapes::icosphere(2), 0.2, 8);
  ParamConfig cfg;
  cfg.rng_seed = 12345;
  const ParamResult a = parameterize(m, cfg), b = parameterize(m, cfg);
  ASSERT_EQ(a.embedding.positions.size(), b.embedding.positions.size());
  for (std::size_t i = 0; i < a.embedding.positions.size(); ++i)
    EXPECT_TRUE(a.embedding.positions[i] == b.embedding.positions[i]);
  EXPECT_EQ(a.stats.energy, b.stats.energy);
}

TEST(Parameterize, RejectsTorusAndZeroAreaFaces) {
  EXPECT_THROW(parameterize(shapes::torus(10, 6), ParamConfig{}), TopologyError);
  TriangleMesh m = shapes::octahedron();
  m.vertices[4] = {0.5, 0.5, 0.0};  // on the segment between two equator vertices
  EXPECT_THROW(parameterize(m, ParamConfig{}), DomainError);
}
