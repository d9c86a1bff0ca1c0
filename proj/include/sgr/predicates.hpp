#pragma once

#include "sgr/vec3.hpp"

namespace sgr {

/// Exact sign of det[b - a, c - a, d - a]: +1 when d lies on the side of plane (a, b, c) that the
/// right-handed normal (b - a) x (c - a) points to, -1 on the other side, 0 when coplanar.
/// A floating-point filter settles almost every call; ambiguous cases fall back to exact
/// rational arithmetic.
int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Exact sign of det[a, b, c] (orientation relative to the origin).
int orient_origin(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace sgr
