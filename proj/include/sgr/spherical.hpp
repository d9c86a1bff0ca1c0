#pragma once

#include <array>

#include "sgr/vec3.hpp"

namespace sgr {

/// Signed solid angle of the spherical triangle (a, b, c) on the unit sphere
/// (Van Oosterom-Strackee); positive for counter-clockwise order seen from outside.
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// Below this many steradians spherical_barycentric switches to planar (gnomonic) weights.
inline constexpr double kTinySphericalArea = 1e-14;

/// Barycentric weights of p in the spherical triangle (a, b, c) as solid-angle ratios:
/// weight c is Area(p, next, next-next) / Area(a, b, c), so weight 0 is 1 at p == a.
/// Weights are clamped to [0, 1] and renormalized to sum to one.
std::array<double, 3> spherical_barycentric(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

/// Planar barycentrics of the central projection of p onto the plane through a, b, c.
std::array<double, 3> gnomonic_barycentric(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace sgr
