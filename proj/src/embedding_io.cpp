#include "sgr/embedding_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "sgr/errors.hpp"
#include "sgr/mesh_io.hpp"

namespace sgr {

namespace {

constexpr char kMagic[8] = {'S', 'G', 'R', 'E', 'M', 'B', '1', '\0'};

static_assert(std::endian::native == std::endian::little, "sidecar writer assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T get(std::istream& in, const std::string& name) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof value)) throw IoError(name + ": truncated embedding sidecar");
  return value;
}

}  // namespace

std::filesystem::path embedding_sidecar_path(const std::filesystem::path& ply_path) {
  std::filesystem::path p = ply_path;
  return p.replace_extension(".emb");
}

void save_embedding(const SphericalEmbedding& emb, const std::filesystem::path& ply_path) {
  if (!emb.complete()) throw DomainError("only complete embeddings can be saved");
  save_mesh(TriangleMesh{emb.positions, emb.faces}, ply_path, MeshFormat::ply, PlyEncoding::binary_little_endian);
  const auto side = embedding_sidecar_path(ply_path);
  std::ofstream out(side, std::ios::binary);
  if (!out) throw IoError("cannot write " + side.string());
  out.write(kMagic, sizeof kMagic);
  put<std::uint64_t>(out, emb.source_hash);
  put<std::uint64_t>(out, emb.positions.size());
  for (const Vec3& p : emb.positions) {
    put(out, p.x);
    put(out, p.y);
    put(out, p.z);
  }
  if (!out) throw IoError("cannot write " + side.string());
}

SphericalEmbedding load_embedding(const std::filesystem::path& ply_path) {
  const auto side = embedding_sidecar_path(ply_path);
  std::ifstream in(side, std::ios::binary);
  if (!in) throw IoError(side.string() + ": missing embedding sidecar");
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw IoError(side.string() + ": not an embedding sidecar");
  SphericalEmbedding emb;
  emb.source_hash = get<std::uint64_t>(in, side.string());
  const auto count = get<std::uint64_t>(in, side.string());
  const TriangleMesh mesh = load_mesh(ply_path, MeshFormat::ply);
  if (mesh.vertices.size() != count) throw IoError(side.string() + ": vertex count differs from " + ply_path.string());
  emb.positions.resize(count);
  for (Vec3& p : emb.positions) {
    p.x = get<double>(in, side.string());
    p.y = get<double>(in, side.string());
    p.z = get<double>(in, side.string());
  }
  emb.faces = mesh.faces;
  emb.vertex_active.assign(count, 1);
  emb.face_active.assign(mesh.faces.size(), 1);
  return emb;
}

void check_embedding_matches(const SphericalEmbedding& emb, const TriangleMesh& mesh) {
  if (emb.source_hash != mesh_hash(mesh) || emb.positions.size() != mesh.vertices.size() || emb.faces != mesh.faces)
    throw DomainError("embedding does not match mesh");
}

}  // namespace sgr
