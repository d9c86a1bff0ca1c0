#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sgr/spherical.hpp"

using namespace sgr;

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return normalized({g(rng), g(rng), g(rng)});
}

// Small triangle around `center` with angular radius `r`.
std::array<Vec3, 3> small_triangle(const Vec3& center, double r, double twist) {
  const Vec3 e1 = normalized(any_perpendicular(center));
  const Vec3 e2 = cross(center, e1);
  std::array<Vec3, 3> t;
  for (int k = 0; k < 3; ++k) {
    const double a = twist + 2 * std::numbers::pi * k / 3.0;
    t[k] = normalized(center * std::cos(r) + (e1 * std::cos(a) + e2 * std::sin(a)) * std::sin(r));
  }
  return t;
}

}  // namespace

TEST(SphericalArea, OctantIsHalfPi) {
  EXPECT_NEAR(spherical_triangle_area({1, 0, 0}, {0, 1, 0}, {0, 0, 1}), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(spherical_triangle_area({1, 0, 0}, {0, 0, 1}, {0, 1, 0}), -std::numbers::pi / 2, 1e-15);
}

TEST(SphericalArea, MatchesLhuilier) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 5000; ++k) {
    const Vec3 a = random_unit(rng), b = random_unit(rng), c = random_unit(rng);
    EXPECT_NEAR(std::abs(spherical_triangle_area(a, b, c)), oracle::lhuilier_area(a, b, c), 1e-9);
  }
}

TEST(SphericalArea, OctahedronFacesCoverSphere) {
  const Vec3 px{1, 0, 0}, nx{-1, 0, 0}, py{0, 1, 0}, ny{0, -1, 0}, pz{0, 0, 1}, nz{0, 0, -1};
  const double total = spherical_triangle_area(px, py, pz) + spherical_triangle_area(py, nx, pz) +
                       spherical_triangle_area(nx, ny, pz) + spherical_triangle_area(ny, px, pz) +
                       spherical_triangle_area(py, px, nz) + spherical_triangle_area(nx, py, nz) +
                       spherical_triangle_area(ny, nx, nz) + spherical_triangle_area(px, ny, nz);
  EXPECT_NEAR(total, 4 * std::numbers::pi, 1e-12);
}

TEST(SphericalBarycentric, VertexCase) {
  const Vec3 a{1, 0, 0}, b{0, 1, 0}, c{0, 0, 1};
  const auto la = spherical_barycentric(a, a, b, c);
  EXPECT_NEAR(la[0], 1.0, 1e-15);
  EXPECT_NEAR(la[1], 0.0, 1e-15);
  EXPECT_NEAR(la[2], 0.0, 1e-15);
  const auto lc = spherical_barycentric(c, a, b, c);
  EXPECT_NEAR(lc[2], 1.0, 1e-15);
}

TEST(SphericalBarycentric, CentroidOfEquilateralFace) {
  const Vec3 a{1, 0, 0}, b{0, 1, 0}, c{0, 0, 1};
  const auto l = spherical_barycentric(normalized(a + b + c), a, b, c);
  for (double x : l) EXPECT_NEAR(x, 1.0 / 3.0, 1e-9);
}

TEST(SphericalBarycentric, PartitionOfUnityAndRange) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 5000; ++k) {
    const Vec3 a = random_unit(rng), b = random_unit(rng), c = random_unit(rng), p = random_unit(rng);
    const auto l = spherical_barycentric(p, a, b, c);
    EXPECT_NEAR(l[0] + l[1] + l[2], 1.0, 1e-9);
    for (double x : l) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
  }
}

TEST(SphericalBarycentric, SmallTrianglesApproachGnomonic) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const auto t = small_triangle(random_unit(rng), 0.1 * u(rng) + 1e-3, 6.3 * u(rng));
    double w[3] = {u(rng), u(rng), u(rng)};
    const double sum = w[0] + w[1] + w[2];
    const Vec3 p = normalized(t[0] * (w[0] / sum) + t[1] * (w[1] / sum) + t[2] * (w[2] / sum));
    const auto ls = spherical_barycentric(p, t[0], t[1], t[2]);
    const auto lg = gnomonic_barycentric(p, t[0], t[1], t[2]);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(ls[c], lg[c], 1e-3);
  }
}

TEST(SphericalBarycentric, TinyTrianglesUseGnomonicFallback) {
  const auto t = small_triangle(normalized({1, 2, 3}), 1e-8, 0.4);
  const Vec3 p = normalized(t[0] * 0.2 + t[1] * 0.3 + t[2] * 0.5);
  const auto l = spherical_barycentric(p, t[0], t[1], t[2]);
  EXPECT_NEAR(l[0], 0.2, 1e-6);
  EXPECT_NEAR(l[1], 0.3, 1e-6);
  EXPECT_NEAR(l[2], 0.5, 1e-6);
}

TEST(GnomonicBarycentric, ReproducesPlanarWeights) {
  const Vec3 a{1, 0, 0}, b{0, 1, 0}, c{0, 0, 1};
  const Vec3 q = a * 0.5 + b * 0.25 + c * 0.25;  // on the plane x + y + z = 1
  const auto l = gnomonic_barycentric(normalized(q), a, b, c);
  EXPECT_NEAR(l[0], 0.5, 1e-14);
  EXPECT_NEAR(l[1], 0.25, 1e-14);
  EXPECT_NEAR(l[2], 0.25, 1e-14);
}
