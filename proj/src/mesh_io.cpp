#include "sgr/mesh_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sgr/errors.hpp"

namespace sgr {

namespace {

void finish_loaded(TriangleMesh& mesh, const char* what) {
  if (mesh.vertices.empty() || mesh.faces.empty()) throw IoError(std::string(what) + ": empty mesh");
  const auto n = static_cast<long>(mesh.vertices.size());
  for (const Face& f : mesh.faces)
    for (int i : f)
      if (i < 0 || i >= n) throw IoError(std::string(what) + ": face references missing vertex");
  for (const Face& f : mesh.faces)
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) throw IoError(std::string(what) + ": degenerate face index triple");
}

void fan_triangulate(const std::vector<int>& poly, std::vector<Face>& out) {
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) out.push_back({poly[0], poly[k], poly[k + 1]});
}

double parse_double(const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw IoError(std::string(what) + ": malformed number '" + token + "'");
    return v;
  } catch (const std::logic_error&) {
    throw IoError(std::string(what) + ": malformed number '" + token + "'");
  }
}

// ---- PLY ----

enum class PlyType { int8, uint8, int16, uint16, int32, uint32, float32, float64 };

PlyType parse_ply_type(const std::string& name) {
  if (name == "char" || name == "int8") return PlyType::int8;
  if (name == "uchar" || name == "uint8") return PlyType::uint8;
  if (name == "short" || name == "int16") return PlyType::int16;
  if (name == "ushort" || name == "uint16") return PlyType::uint16;
  if (name == "int" || name == "int32") return PlyType::int32;
  if (name == "uint" || name == "uint32") return PlyType::uint32;
  if (name == "float" || name == "float32") return PlyType::float32;
  if (name == "double" || name == "float64") return PlyType::float64;
  throw IoError("ply: unknown property type '" + name + "'");
}

struct PlyProperty {
  std::string name;
  PlyType type = PlyType::float32;
  bool is_list = false;
  PlyType count_type = PlyType::uint8;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

template <typename T>
T read_raw(std::istream& in, bool swap) {
  T value;
  char bytes[sizeof(T)];
  if (!in.read(bytes, sizeof(T))) throw IoError("ply: unexpected end of binary data");
  if (swap) std::reverse(bytes, bytes + sizeof(T));
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

double read_binary_value(std::istream& in, PlyType t, bool swap) {
  switch (t) {
    case PlyType::int8: return read_raw<std::int8_t>(in, swap);
    case PlyType::uint8: return read_raw<std::uint8_t>(in, swap);
    case PlyType::int16: return read_raw<std::int16_t>(in, swap);
    case PlyType::uint16: return read_raw<std::uint16_t>(in, swap);
    case PlyType::int32: return read_raw<std::int32_t>(in, swap);
    case PlyType::uint32: return read_raw<std::uint32_t>(in, swap);
    case PlyType::float32: return read_raw<float>(in, swap);
    case PlyType::float64: return read_raw<double>(in, swap);
  }
  return 0.0;
}

}  // namespace

MeshFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".obj") return MeshFormat::obj;
  if (ext == ".ply") return MeshFormat::ply;
  throw IoError("cannot infer mesh format from extension of '" + path.string() + "'");
}

TriangleMesh read_obj(std::istream& in) {
  TriangleMesh mesh;
  std::string line;
  std::size_t line_no = 0;
  std::vector<int> poly;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      std::string sx, sy, sz;
      if (!(ss >> sx >> sy >> sz)) throw IoError("obj: line " + std::to_string(line_no) + ": vertex needs 3 coordinates");
      mesh.vertices.push_back({parse_double(sx, "obj"), parse_double(sy, "obj"), parse_double(sz, "obj")});
    } else if (tag == "f") {
      poly.clear();
      std::string token;
      while (ss >> token) {
        const std::string head = token.substr(0, token.find('/'));
        long idx = 0;
        const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
        if (ec != std::errc() || ptr != head.data() + head.size() || idx == 0)
          throw IoError("obj: line " + std::to_string(line_no) + ": bad face index '" + token + "'");
        const long resolved = idx > 0 ? idx - 1 : static_cast<long>(mesh.vertices.size()) + idx;
        poly.push_back(static_cast<int>(resolved));
      }
      if (poly.size() < 3) throw IoError("obj: line " + std::to_string(line_no) + ": face needs at least 3 indices");
      fan_triangulate(poly, mesh.faces);
    }
    // vt / vn / g / o / s / usemtl records are ignored.
  }
  finish_loaded(mesh, "obj");
  return mesh;
}

TriangleMesh read_ply(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("ply", 0) != 0) throw IoError("ply: missing magic");
  enum class Enc { ascii, le, be } enc = Enc::ascii;
  bool have_format = false;
  std::vector<PlyElement> elements;
  while (true) {
    if (!std::getline(in, line)) throw IoError("ply: unterminated header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    if (word == "end_header") break;
    if (word == "format") {
      std::string name;
      ss >> name;
      if (name == "ascii") enc = Enc::ascii;
      else if (name == "binary_little_endian") enc = Enc::le;
      else if (name == "binary_big_endian") enc = Enc::be;
      else throw IoError("ply: unknown format '" + name + "'");
      have_format = true;
    } else if (word == "element") {
      PlyElement e;
      if (!(ss >> e.name >> e.count)) throw IoError("ply: malformed element line");
      elements.push_back(e);
    } else if (word == "property") {
      if (elements.empty()) throw IoError("ply: property before element");
      PlyProperty p;
      std::string type;
      ss >> type;
      if (type == "list") {
        std::string count_type, item_type;
        ss >> count_type >> item_type >> p.name;
        p.is_list = true;
        p.count_type = parse_ply_type(count_type);
        p.type = parse_ply_type(item_type);
      } else {
        p.type = parse_ply_type(type);
        ss >> p.name;
      }
      elements.back().properties.push_back(p);
    }
    // comment / obj_info lines are ignored.
  }
  if (!have_format) throw IoError("ply: missing format line");
  const bool swap = (enc == Enc::be) == (std::endian::native == std::endian::little);

  TriangleMesh mesh;
  for (const PlyElement& e : elements) {
    const bool is_vertex = e.name == "vertex";
    const bool is_face = e.name == "face";
    int ix = -1, iy = -1, iz = -1, iface = -1;
    for (std::size_t k = 0; k < e.properties.size(); ++k) {
      const auto& name = e.properties[k].name;
      if (name == "x") ix = static_cast<int>(k);
      if (name == "y") iy = static_cast<int>(k);
      if (name == "z") iz = static_cast<int>(k);
      if (e.properties[k].is_list && (name == "vertex_indices" || name == "vertex_index")) iface = static_cast<int>(k);
    }
    if (is_vertex && (ix < 0 || iy < 0 || iz < 0)) throw IoError("ply: vertex element lacks x/y/z");
    if (is_face && iface < 0) throw IoError("ply: face element lacks vertex_indices");

    std::vector<int> poly;
    for (std::size_t r = 0; r < e.count; ++r) {
      Vec3 pos;
      poly.clear();
      std::istringstream row;
      if (enc == Enc::ascii) {
        if (!std::getline(in, line)) throw IoError("ply: unexpected end of ascii data");
        row.str(line);
      }
      auto next_value = [&](PlyType t) -> double {
        if (enc != Enc::ascii) return read_binary_value(in, t, swap);
        std::string token;
        if (!(row >> token)) throw IoError("ply: short ascii row");
        return parse_double(token, "ply");
      };
      for (std::size_t k = 0; k < e.properties.size(); ++k) {
        const PlyProperty& p = e.properties[k];
        if (p.is_list) {
          const auto n = static_cast<long>(next_value(p.count_type));
          if (n < 0) throw IoError("ply: negative list length");
          for (long j = 0; j < n; ++j) {
            const double v = next_value(p.type);
            if (static_cast<int>(k) == iface) poly.push_back(static_cast<int>(v));
          }
        } else {
          const double v = next_value(p.type);
          if (static_cast<int>(k) == ix) pos.x = v;
          if (static_cast<int>(k) == iy) pos.y = v;
          if (static_cast<int>(k) == iz) pos.z = v;
        }
      }
      if (is_vertex) mesh.vertices.push_back(pos);
      if (is_face) {
        if (poly.size() < 3) throw IoError("ply: face with fewer than 3 indices");
        fan_triangulate(poly, mesh.faces);
      }
    }
  }
  finish_loaded(mesh, "ply");
  return mesh;
}

TriangleMesh load_mesh(const std::filesystem::path& path, std::optional<MeshFormat> format) {
  const MeshFormat fmt = format ? *format : format_from_path(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return fmt == MeshFormat::obj ? read_obj(in) : read_ply(in);
}

void write_obj(const TriangleMesh& mesh, std::ostream& out) {
  char buf[128];
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
    out << buf;
  }
  for (const Face& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_ply(const TriangleMesh& mesh, std::ostream& out, PlyEncoding encoding) {
  const bool binary = encoding == PlyEncoding::binary_little_endian;
  out << "ply\n"
      << "format " << (binary ? "binary_little_endian" : "ascii") << " 1.0\n"
      << "element vertex " << mesh.vertices.size() << "\n"
      << "property double x\nproperty double y\nproperty double z\n"
      << "element face " << mesh.faces.size() << "\n"
      << "property list uchar int vertex_indices\n"
      << "end_header\n";
  if (binary) {
    static_assert(std::endian::native == std::endian::little, "binary PLY writer assumes a little-endian host");
    for (const Vec3& v : mesh.vertices) {
      const double xyz[3] = {v.x, v.y, v.z};
      out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
    }
    for (const Face& f : mesh.faces) {
      const std::uint8_t n = 3;
      const std::int32_t idx[3] = {f[0], f[1], f[2]};
      out.write(reinterpret_cast<const char*>(&n), 1);
      out.write(reinterpret_cast<const char*>(idx), sizeof(idx));
    }
  } else {
    char buf[128];
    for (const Vec3& v : mesh.vertices) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", v.x, v.y, v.z);
      out << buf;
    }
    for (const Face& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  }
}

void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path, std::optional<MeshFormat> format,
               PlyEncoding encoding) {
  check_indices(mesh);
  const MeshFormat fmt = format ? *format : format_from_path(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  if (fmt == MeshFormat::obj) write_obj(mesh, out);
  else write_ply(mesh, out, encoding);
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace sgr
