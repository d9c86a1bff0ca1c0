#include "sgr/sgr_codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sgr/convex_hull.hpp"
#include "sgr/errors.hpp"
#include "sgr/locator.hpp"

namespace sgr {

std::string to_string(SgrKind kind) {
  switch (kind) {
    case SgrKind::geometry:
      return "geometry";
    case SgrKind::texture:
      return "texture";
    case SgrKind::displacement:
      return "displacement";
  }
  return "geometry";
}

SgrKind kind_from_string(const std::string& name) {
  if (name == "geometry") return SgrKind::geometry;
  if (name == "texture") return SgrKind::texture;
  if (name == "displacement") return SgrKind::displacement;
  throw std::invalid_argument("unknown map kind '" + name + "'");
}

std::vector<ChannelRange> channel_ranges(const Grid& grid) {
  std::vector<ChannelRange> ranges(grid.channels);
  for (int c = 0; c < grid.channels; ++c) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t k = c; k < grid.data.size(); k += grid.channels) {
      lo = std::min(lo, grid.data[k]);
      hi = std::max(hi, grid.data[k]);
    }
    ranges[c] = grid.data.empty() ? ChannelRange{} : ChannelRange{lo, hi};
  }
  return ranges;
}

SgrMap bake(const SphericalEmbedding& emb, std::span<const double> signal, int channels, int resolution,
            SgrKind kind) {
  if (channels < 1) throw DomainError("bake: channel count must be positive");
  if (signal.size() != emb.positions.size() * static_cast<std::size_t>(channels))
    throw DomainError("bake: signal length does not match vertex count");
  if (kind == SgrKind::geometry && channels != 3) throw DomainError("bake: geometry maps have 3 channels");
  const UniformGrid grid = uniform_grid(resolution);
  const TriangleLocator locator(emb);
  SgrMap map;
  map.kind = kind;
  map.grid = Grid(resolution, resolution, channels);
  map.weld = grid.weld;
  map.source_hash = emb.source_hash;
  for (std::size_t k = 0; k < grid.samples.size(); ++k) {
    const BarycentricHit hit = locator.locate(grid.samples[k].sphere.vec());
    const Face& t = emb.faces[hit.face_index];
    double* out = map.grid.data.data() + k * channels;
    for (int c = 0; c < channels; ++c) {
      double v = 0.0;
      for (int corner = 0; corner < 3; ++corner)
        v += hit.lambda[corner] * signal[static_cast<std::size_t>(t[corner]) * channels + c];
      out[c] = v;
    }
  }
  map.quantization = channel_ranges(map.grid);
  return map;
}

SgrMap bake_geometry(const TriangleMesh& mesh, const SphericalEmbedding& emb, int resolution) {
  if (mesh.vertices.size() != emb.positions.size()) throw DomainError("bake: signal length does not match vertex count");
  std::vector<double> signal;
  signal.reserve(mesh.vertices.size() * 3);
  for (const Vec3& v : mesh.vertices) signal.insert(signal.end(), {v.x, v.y, v.z});
  SgrMap map = bake(emb, signal, 3, resolution, SgrKind::geometry);
  map.source_hash = mesh_hash(mesh);
  return map;
}

VertexSgr bake_vertices_only(const SphericalEmbedding& emb, const TriangleMesh& mesh) {
  if (mesh.vertices.size() != emb.positions.size()) throw DomainError("embedding does not match mesh");
  VertexSgr out;
  out.positions = mesh.vertices;
  out.faces = mesh.faces;
  out.sphere = emb.positions;
  out.square.reserve(emb.positions.size());
  for (const Vec3& s : emb.positions) out.square.push_back(sphere_to_square(SpherePoint::from(s)));
  return out;
}

TriangleMesh reconstruct(const SgrMap& map) {
  if (map.kind != SgrKind::geometry) throw DomainError("geometry kind required");
  if (map.grid.channels != 3) throw DomainError("reconstruct: geometry maps have 3 channels");
  if (map.grid.width != map.grid.height) throw DomainError("reconstruct: map must be square");
  const UniformGrid grid = uniform_grid(map.grid.width);
  if (grid.distinct_count() < 4) throw DomainError("reconstruct: fewer than 4 distinct sphere samples");

  TriangleMesh mesh;
  mesh.vertices.assign(grid.distinct_count(), Vec3{});
  std::vector<int> members(grid.distinct_count(), 0);
  for (std::size_t k = 0; k < grid.samples.size(); ++k) {
    const std::uint32_t d = grid.weld[k];
    mesh.vertices[d] += Vec3{map.grid.data[3 * k], map.grid.data[3 * k + 1], map.grid.data[3 * k + 2]};
    ++members[d];
  }
  for (std::size_t d = 0; d < mesh.vertices.size(); ++d) mesh.vertices[d] /= static_cast<double>(members[d]);
  mesh.faces = convex_hull(grid.distinct_points);
  return mesh;
}

Grid center_symmetric_pad(const Grid& g) {
  const int h = g.height, w = g.width, ch = g.channels;
  if (h < 1 || w < 1) throw DomainError("pad: grid must be at least 1x1");
  Grid q(h + 2, w + 2, ch);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      for (int k = 0; k < ch; ++k) q.at(r + 1, c + 1, k) = g.at(r, c, k);
  for (int i = 1; i <= h; ++i)
    for (int k = 0; k < ch; ++k) {
      q.at(i, 0, k) = g.at(h - i, 0, k);
      q.at(i, w + 1, k) = g.at(h - i, w - 1, k);
    }
  for (int j = 1; j <= w; ++j)
    for (int k = 0; k < ch; ++k) {
      q.at(0, j, k) = g.at(0, w - j, k);
      q.at(h + 1, j, k) = g.at(h - 1, w - j, k);
    }
  for (int k = 0; k < ch; ++k) {
    const double nu = (g.at(0, 0, k) + g.at(0, w - 1, k) + g.at(h - 1, 0, k) + g.at(h - 1, w - 1, k)) / 4.0;
    q.at(0, 0, k) = q.at(0, w + 1, k) = q.at(h + 1, 0, k) = q.at(h + 1, w + 1, k) = nu;
  }
  return q;
}

}  // namespace sgr
