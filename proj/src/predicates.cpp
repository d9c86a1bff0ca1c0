#include "sgr/predicates.hpp"

#include <gmpxx.h>

#include <cmath>
#include <limits>

namespace sgr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
constexpr double kOrientBound = (7.0 + 56.0 * kEps) * kEps;

int sign_of(const mpq_class& q) { return sgn(q); }

// Sign of det[a - d, b - d, c - d] in exact arithmetic.
int orient_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const mpq_class dx(d.x), dy(d.y), dz(d.z);
  const mpq_class adx = mpq_class(a.x) - dx, ady = mpq_class(a.y) - dy, adz = mpq_class(a.z) - dz;
  const mpq_class bdx = mpq_class(b.x) - dx, bdy = mpq_class(b.y) - dy, bdz = mpq_class(b.z) - dz;
  const mpq_class cdx = mpq_class(c.x) - dx, cdy = mpq_class(c.y) - dy, cdz = mpq_class(c.z) - dz;
  const mpq_class det = adx * (bdy * cdz - bdz * cdy) + bdx * (cdy * adz - cdz * ady) + cdx * (ady * bdz - adz * bdy);
  return sign_of(det);
}

}  // namespace

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const double adx = a.x - d.x, ady = a.y - d.y, adz = a.z - d.z;
  const double bdx = b.x - d.x, bdy = b.y - d.y, bdz = b.z - d.z;
  const double cdx = c.x - d.x, cdy = c.y - d.y, cdz = c.z - d.z;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;

  const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                           (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                           (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
  const double bound = kOrientBound * permanent;
  // det here is det[a-d, b-d, c-d] = -det[b-a, c-a, d-a].
  if (det > bound) return -1;
  if (-det > bound) return 1;
  return -orient_exact(a, b, c, d);
}

// det[b - a, c - a, -a] = -det[a, b, c]
int orient_origin(const Vec3& a, const Vec3& b, const Vec3& c) { return -orient3d(a, b, c, Vec3{}); }

}  // namespace sgr
