#include "sgr/spherical.hpp"

#include <algorithm>
#include <cmath>

namespace sgr {

namespace {

std::array<double, 3> clamp_normalize(std::array<double, 3> w) {
  for (double& x : w) x = std::clamp(x, 0.0, 1.0);
  const double s = w[0] + w[1] + w[2];
  if (s <= 0.0) return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  for (double& x : w) x /= s;
  return w;
}

}  // namespace

double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double numer = det3(a, b, c);
  const double denom = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(numer, denom);
}

std::array<double, 3> gnomonic_barycentric(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = cross(b - a, c - a);
  const double denom = dot(n, p);
  const Vec3 q = denom != 0.0 ? p * (dot(n, a) / denom) : p;  // projection of p onto plane(a,b,c)
  const double total = dot(n, n);
  if (total <= 0.0) return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return clamp_normalize({dot(n, cross(b - q, c - q)) / total, dot(n, cross(c - q, a - q)) / total,
                          dot(n, cross(a - q, b - q)) / total});
}

std::array<double, 3> spherical_barycentric(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const double total = spherical_triangle_area(a, b, c);
  if (std::abs(total) < kTinySphericalArea) return gnomonic_barycentric(p, a, b, c);
  return clamp_normalize({spherical_triangle_area(p, b, c) / total, spherical_triangle_area(a, p, c) / total,
                          spherical_triangle_area(a, b, p) / total});
}

}  // namespace sgr
