#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sgr/equal_area.hpp"
#include "sgr/mesh.hpp"
#include "sgr/sphere_param.hpp"

namespace sgr {

/// Row-major H x W x C grid of doubles.
struct Grid {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<double> data;

  Grid() = default;
  Grid(int h, int w, int c, double fill = 0.0)
      : height(h), width(w), channels(c), data(static_cast<std::size_t>(h) * w * c, fill) {}

  double& at(int row, int col, int ch) { return data[(static_cast<std::size_t>(row) * width + col) * channels + ch]; }
  double at(int row, int col, int ch) const {
    return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
  }
  friend bool operator==(const Grid&, const Grid&) = default;
};

enum class SgrKind { geometry, texture, displacement };

std::string to_string(SgrKind kind);
/// Throws std::invalid_argument on an unknown name.
SgrKind kind_from_string(const std::string& name);

struct ChannelRange {
  double min = 0.0;
  double max = 0.0;
  bool constant() const { return min == max; }
};

/// Signal grid anchored to the equal-area samples. Row r, column c holds sample u = ((c+1)/W, (r+1)/H).
struct SgrMap {
  SgrKind kind = SgrKind::geometry;
  Grid grid;
  std::vector<ChannelRange> quantization;  ///< per channel, filled by bake and read_sgr
  std::vector<std::uint32_t> weld;         ///< sample -> distinct sphere point (square maps only)
  std::uint64_t source_hash = 0;

  int resolution() const { return grid.width; }
};

/// Per-channel min/max of the grid values.
std::vector<ChannelRange> channel_ranges(const Grid& grid);

/// Interpolates a per-vertex signal (vertex-major, `channels` values each) at every grid sample.
/// Throws DomainError on a signal/vertex count mismatch or a geometry map without 3 channels.
SgrMap bake(const SphericalEmbedding& embedding, std::span<const double> signal, int channels, int resolution,
            SgrKind kind);

/// Geometry map: the mesh's own vertex positions as the signal.
SgrMap bake_geometry(const TriangleMesh& mesh, const SphericalEmbedding& embedding, int resolution);

/// One record per original vertex: no resampling, original connectivity kept.
struct VertexSgr {
  std::vector<SquarePoint> square;
  std::vector<Vec3> sphere;
  std::vector<Vec3> positions;
  std::vector<Face> faces;

  TriangleMesh to_mesh() const { return {positions, faces}; }
};

VertexSgr bake_vertices_only(const SphericalEmbedding& embedding, const TriangleMesh& mesh);

/// Convex hull of the distinct sphere samples; vertex positions are the (weld-averaged) map values.
/// Throws DomainError for non-geometry maps, non-square maps, or fewer than 4 distinct samples.
TriangleMesh reconstruct(const SgrMap& map);

/// One-pixel border: edges mirrored about their centers, corners set to the mean of the four
/// source corners.
Grid center_symmetric_pad(const Grid& grid);

/// 16-bit PNG for geometry, 8-bit otherwise, plus a `.meta` sidecar next to it.
/// Throws IoError on write failure, DomainError on unsupported channel counts (1-4 allowed).
void write_sgr(const SgrMap& map, const std::filesystem::path& path);
void write_grid_png(const Grid& grid, const std::vector<ChannelRange>& ranges, int bit_depth,
                    const std::filesystem::path& path);

/// Throws IoError "missing quantization metadata" when the sidecar is absent.
SgrMap read_sgr(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& png);

}  // namespace sgr
