#pragma once

#include <filesystem>

#include "sgr/mesh.hpp"
#include "sgr/sphere_param.hpp"

namespace sgr {

/// Writes the unit positions with the mesh connectivity as binary PLY, plus a `.emb` sidecar
/// (magic, source mesh hash, vertex count, positions as little-endian doubles).
void save_embedding(const SphericalEmbedding& embedding, const std::filesystem::path& ply_path);

/// Reads the sidecar next to `ply_path` and the connectivity from the PLY.
/// Throws IoError when either file is missing or malformed.
SphericalEmbedding load_embedding(const std::filesystem::path& ply_path);

std::filesystem::path embedding_sidecar_path(const std::filesystem::path& ply_path);

/// Throws DomainError "embedding does not match mesh" unless hash and sizes agree.
void check_embedding_matches(const SphericalEmbedding& embedding, const TriangleMesh& mesh);

}  // namespace sgr
