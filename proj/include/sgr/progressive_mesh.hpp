#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "sgr/mesh.hpp"

namespace sgr {

/// Inverse of one half-edge collapse (`vertex` merged into `parent`).
///
/// Before the collapse the two faces around edge (parent, vertex) were
/// (parent, vertex, left) and (vertex, parent, right), up to rotation. Replaying the split puts
/// `vertex` back into every slot listed in `relinked` and revives `restored_faces`.
struct VertexSplit {
  int parent = -1;
  int vertex = -1;
  int left = -1;
  int right = -1;
  std::vector<std::pair<int, int>> relinked;  ///< (face id, corner slot) that switch parent -> vertex
  std::array<int, 2> restored_faces{-1, -1};  ///< face ids revived by the split
  std::array<Face, 2> restored_triples{};     ///< their vertex triples at collapse time
};

/// Collapse sequence from the full mesh down to a tetrahedron. Face ids are those of the source mesh.
struct ProgressiveMesh {
  std::size_t vertex_count = 0;  ///< of the full mesh
  std::size_t face_count = 0;
  std::array<int, 4> base_vertices{};
  std::vector<std::pair<int, Face>> base_faces;  ///< (face id, triple) of the 4 surviving faces
  std::vector<VertexSplit> splits;               ///< collapse order; replay back to front

  /// Applies every split to the base and returns the face list indexed by face id.
  std::vector<Face> replay() const;
};

/// Applies one split to a face table indexed by face id (`alive` flags revived faces).
void apply_split(const VertexSplit& split, std::vector<Face>& faces, std::vector<std::uint8_t>& alive);

/// Half-edge collapses, cheapest first, until four vertices remain. Cost is the quadric error of
/// moving the removed vertex onto the kept one, plus a small squared-length term, multiplied by the
/// worst aspect ratio among the faces the collapse reshapes; collapses that flip a face normal
/// only run once nothing else is legal. Every collapse satisfies the link condition, so each
/// intermediate mesh stays a genus-zero 2-manifold. `seed` perturbs ties.
/// Throws TopologyError unless the mesh is a single closed genus-zero manifold with V >= 4.
ProgressiveMesh simplify_to_tetrahedron(const TriangleMesh& mesh, std::uint64_t seed = 0);

}  // namespace sgr
