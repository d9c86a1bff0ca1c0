#include "sgr/equal_area.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace sgr {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

// Signs of (u, v) for the quadrant owning a point, per the counter-clockwise seam rule.
struct QuadrantSigns {
  double su;
  double sv;
};

QuadrantSigns quadrant_of(double a, double b) {
  if (a > 0.0 && b >= 0.0) return {1.0, 1.0};
  if (a <= 0.0 && b > 0.0) return {-1.0, 1.0};
  if (a < 0.0 && b <= 0.0) return {-1.0, -1.0};
  if (a >= 0.0 && b < 0.0) return {1.0, -1.0};
  return {1.0, 1.0};  // origin
}

}  // namespace

SpherePoint square_to_sphere(SquarePoint p) {
  const double u = 2.0 * p.s - 1.0;
  const double v = 2.0 * p.t - 1.0;
  const QuadrantSigns q = quadrant_of(u, v);
  const double au = std::abs(u);
  const double av = std::abs(v);
  const double d = 1.0 - (au + av);
  const bool inner = d >= 0.0;
  const double r = inner ? au + av : 2.0 - au - av;
  const double phi = r == 0.0 ? 0.0 : kQuarterPi * ((av - au) / r + 1.0);
  const double lift = r * std::sqrt(std::max(0.0, 2.0 - r * r));
  const double z = inner ? 1.0 - r * r : -(1.0 - r * r);
  return {q.su * std::cos(phi) * lift, q.sv * std::sin(phi) * lift, z};
}

SquarePoint sphere_to_square(SpherePoint p) {
  const QuadrantSigns q = quadrant_of(p.x, p.y);
  const double ax = std::abs(p.x);
  const double ay = std::abs(p.y);
  const double az = std::abs(p.z);
  // r^2 = 1 - |z|, written to stay accurate near the poles.
  const double r = std::min(1.0, std::sqrt((ax * ax + ay * ay) / (1.0 + az)));
  const double phi = (ax == 0.0 && ay == 0.0) ? 0.0 : std::atan2(ay, ax);
  double vq = phi * r / (2.0 * kQuarterPi);
  double uq = r - vq;
  if (p.z < 0.0) {
    const double mu = 1.0 - vq;
    const double mv = 1.0 - uq;
    uq = mu;
    vq = mv;
  }
  const double u = q.su * uq;
  const double v = q.sv * vq;
  return {std::clamp((u + 1.0) * 0.5, 0.0, 1.0), std::clamp((v + 1.0) * 0.5, 0.0, 1.0)};
}

UniformGrid uniform_grid(int resolution, double weld_tolerance) {
  if (resolution < 2) throw std::invalid_argument("uniform_grid: resolution must be >= 2");
  UniformGrid grid;
  grid.resolution = resolution;
  const std::size_t n = static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution);
  grid.samples.reserve(n);
  grid.weld.reserve(n);

  const double cell = std::max(weld_tolerance * 1e3, 1e-9);
  auto cell_of = [cell](double c) { return static_cast<long long>(std::floor(c / cell)); };
  auto key_of = [](long long a, long long b, long long c) {
    return static_cast<std::uint64_t>(a * 73856093LL) ^ static_cast<std::uint64_t>(b * 19349663LL) ^
           static_cast<std::uint64_t>(c * 83492791LL);
  };
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  buckets.reserve(n);

  for (int j = 1; j <= resolution; ++j) {
    for (int i = 1; i <= resolution; ++i) {
      GridSample s;
      s.i = i;
      s.j = j;
      s.square = {static_cast<double>(i) / resolution, static_cast<double>(j) / resolution};
      s.sphere = square_to_sphere(s.square);
      const Vec3 p = s.sphere.vec();

      const long long cx = cell_of(p.x), cy = cell_of(p.y), cz = cell_of(p.z);
      std::int64_t found = -1;
      for (long long dx = -1; dx <= 1 && found < 0; ++dx)
        for (long long dy = -1; dy <= 1 && found < 0; ++dy)
          for (long long dz = -1; dz <= 1 && found < 0; ++dz) {
            auto it = buckets.find(key_of(cx + dx, cy + dy, cz + dz));
            if (it == buckets.end()) continue;
            for (std::uint32_t d : it->second)
              if (distance(grid.distinct_points[d], p) < weld_tolerance) {
                found = d;
                break;
              }
          }
      if (found < 0) {
        found = static_cast<std::int64_t>(grid.distinct_points.size());
        grid.distinct_points.push_back(p);
        buckets[key_of(cx, cy, cz)].push_back(static_cast<std::uint32_t>(found));
      }
      grid.weld.push_back(static_cast<std::uint32_t>(found));
      grid.samples.push_back(s);
    }
  }
  return grid;
}

}  // namespace sgr
