#include "sgr/locator.hpp"

#include <algorithm>
#include <cmath>

#include "sgr/errors.hpp"
#include "sgr/predicates.hpp"
#include "sgr/spherical.hpp"

namespace sgr {

namespace {

BarycentricHit hit_for(const SphericalEmbedding& emb, int f, const Vec3& s) {
  const Face& t = emb.faces[f];
  return {f, spherical_barycentric(s, emb.positions[t[0]], emb.positions[t[1]], emb.positions[t[2]])};
}

// Face with the largest minimum edge-plane margin; only reached if exact containment finds nothing.
BarycentricHit closest_face(const SphericalEmbedding& emb, const Vec3& s) {
  int best = -1;
  double best_margin = -2.0;
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    if (!emb.face_active[f]) continue;
    const Face& t = emb.faces[f];
    const Vec3 &a = emb.positions[t[0]], &b = emb.positions[t[1]], &c = emb.positions[t[2]];
    const double margin = std::min({det3(s, a, b), det3(s, b, c), det3(s, c, a)});
    if (margin > best_margin) best_margin = margin, best = static_cast<int>(f);
  }
  if (best < 0) throw DomainError("embedding has no active faces");
  return hit_for(emb, best, s);
}

}  // namespace

bool spherical_triangle_contains(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& s) {
  return orient_origin(s, a, b) >= 0 && orient_origin(s, b, c) >= 0 && orient_origin(s, c, a) >= 0;
}

BarycentricHit locate_brute_force(const SphericalEmbedding& emb, const Vec3& s) {
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    if (!emb.face_active[f]) continue;
    const Face& t = emb.faces[f];
    if (spherical_triangle_contains(emb.positions[t[0]], emb.positions[t[1]], emb.positions[t[2]], s))
      return hit_for(emb, static_cast<int>(f), s);
  }
  return closest_face(emb, s);
}

TriangleLocator::TriangleLocator(const SphericalEmbedding& emb) : emb_(&emb) {
  if (count_flipped(emb) != 0) throw DomainError("locator needs a valid embedding (flipped spherical triangle)");
  std::size_t active = 0;
  for (auto a : emb.face_active) active += a ? 1 : 0;
  n_ = std::clamp(static_cast<int>(std::ceil(std::sqrt(static_cast<double>(active)))), 1, 128);
  const std::size_t cells = static_cast<std::size_t>(n_) * n_ * n_;
  const double cell = 2.0 / n_;

  std::vector<std::array<int, 6>> ranges;
  std::vector<int> ids;
  std::vector<std::size_t> counts(cells + 1, 0);
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    if (!emb.face_active[f]) continue;
    const Face& t = emb.faces[f];
    const Vec3 &a = emb.positions[t[0]], &b = emb.positions[t[1]], &c = emb.positions[t[2]];
    const Vec3 center = normalized(a + b + c);
    double chord = std::max({distance(center, a), distance(center, b), distance(center, c)});
    // A cap wider than a hemisphere is not bounded by its vertex chords.
    if (norm2(center) == 0.0 || dot(center, a) <= 0.0 || dot(center, b) <= 0.0 || dot(center, c) <= 0.0) chord = 4.0;
    chord = chord * (1.0 + 1e-9) + 1e-12;
    std::array<int, 6> r{};
    for (int k = 0; k < 3; ++k) {
      r[k] = std::clamp(static_cast<int>(std::floor((center[k] - chord + 1.0) / cell)), 0, n_ - 1);
      r[k + 3] = std::clamp(static_cast<int>(std::floor((center[k] + chord + 1.0) / cell)), 0, n_ - 1);
    }
    for (int x = r[0]; x <= r[3]; ++x)
      for (int y = r[1]; y <= r[4]; ++y)
        for (int z = r[2]; z <= r[5]; ++z) ++counts[(static_cast<std::size_t>(x) * n_ + y) * n_ + z + 1];
    ranges.push_back(r);
    ids.push_back(static_cast<int>(f));
  }
  offsets_.assign(cells + 1, 0);
  for (std::size_t i = 1; i <= cells; ++i) offsets_[i] = offsets_[i - 1] + counts[i];
  items_.resize(offsets_[cells]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Faces are visited in increasing index, so every cell list is sorted.
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const auto& r = ranges[k];
    for (int x = r[0]; x <= r[3]; ++x)
      for (int y = r[1]; y <= r[4]; ++y)
        for (int z = r[2]; z <= r[5]; ++z) items_[fill[(static_cast<std::size_t>(x) * n_ + y) * n_ + z]++] = ids[k];
  }
}

std::size_t TriangleLocator::cell_of(const Vec3& p) const {
  const double cell = 2.0 / n_;
  std::size_t idx[3];
  for (int k = 0; k < 3; ++k)
    idx[k] = static_cast<std::size_t>(std::clamp(static_cast<int>(std::floor((p[k] + 1.0) / cell)), 0, n_ - 1));
  return (idx[0] * n_ + idx[1]) * n_ + idx[2];
}

BarycentricHit TriangleLocator::locate(const Vec3& s) const {
  const std::size_t c = cell_of(s);
  for (std::size_t i = offsets_[c]; i < offsets_[c + 1]; ++i) {
    const int f = items_[i];
    const Face& t = emb_->faces[f];
    if (spherical_triangle_contains(emb_->positions[t[0]], emb_->positions[t[1]], emb_->positions[t[2]], s))
      return hit_for(*emb_, f, s);
  }
  return locate_brute_force(*emb_, s);
}

}  // namespace sgr
