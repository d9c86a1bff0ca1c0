#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "sgr/mesh.hpp"

namespace sgr {

enum class MeshFormat { obj, ply };
enum class PlyEncoding { binary_little_endian, ascii };

/// Guess the format from the file extension (.obj / .ply). Throws IoError otherwise.
MeshFormat format_from_path(const std::filesystem::path& path);

/// Loads OBJ (v/f records, 1-based or negative indices) or PLY (ascii, binary LE/BE).
/// Polygons with more than three corners are fan-triangulated. Throws IoError on parse
/// failure, a face referencing a missing vertex, or an empty mesh.
TriangleMesh load_mesh(const std::filesystem::path& path, std::optional<MeshFormat> format = std::nullopt);

TriangleMesh read_obj(std::istream& in);
TriangleMesh read_ply(std::istream& in);

/// Writes the mesh. PLY defaults to binary little-endian doubles, which round-trip bit-exactly;
/// OBJ is written with 17 significant digits.
void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path,
               std::optional<MeshFormat> format = std::nullopt,
               PlyEncoding encoding = PlyEncoding::binary_little_endian);

void write_obj(const TriangleMesh& mesh, std::ostream& out);
void write_ply(const TriangleMesh& mesh, std::ostream& out, PlyEncoding encoding);

}  // namespace sgr
