#include <png.h>

#include <cinttypes>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "sgr/errors.hpp"
#include "sgr/sgr_codec.hpp"

namespace sgr {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

int color_type_for(int channels) {
  switch (channels) {
    case 1:
      return PNG_COLOR_TYPE_GRAY;
    case 2:
      return PNG_COLOR_TYPE_GRAY_ALPHA;
    case 3:
      return PNG_COLOR_TYPE_RGB;
    case 4:
      return PNG_COLOR_TYPE_RGB_ALPHA;
    default:
      throw DomainError("SGR PNG supports 1 to 4 channels");
  }
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::map<std::string, std::string>& kv, const std::string& key, const std::string& file) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw IoError(file + ": metadata key '" + key + "' missing");
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw IoError(file + ": bad value for metadata key '" + key + "'");
  }
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& png) {
  std::filesystem::path p = png;
  return p.replace_extension(".meta");
}

void write_grid_png(const Grid& grid, const std::vector<ChannelRange>& ranges, int bit_depth,
                    const std::filesystem::path& path) {
  const int color = color_type_for(grid.channels);
  if (bit_depth != 8 && bit_depth != 16) throw DomainError("bit depth must be 8 or 16");
  if (static_cast<int>(ranges.size()) != grid.channels) throw DomainError("one quantization range per channel");
  const double levels = bit_depth == 16 ? 65535.0 : 255.0;
  const int bytes = bit_depth / 8;

  std::vector<unsigned char> pixels(grid.data.size() * bytes);
  for (std::size_t k = 0; k < grid.data.size(); ++k) {
    const ChannelRange& r = ranges[k % grid.channels];
    long q = 0;
    if (!r.constant()) q = std::lround((grid.data[k] - r.min) / (r.max - r.min) * levels);
    q = std::clamp(q, 0L, static_cast<long>(levels));
    if (bytes == 2) {
      pixels[2 * k] = static_cast<unsigned char>(q >> 8);
      pixels[2 * k + 1] = static_cast<unsigned char>(q & 0xff);
    } else {
      pixels[k] = static_cast<unsigned char>(q);
    }
  }

  FilePtr file(std::fopen(path.string().c_str(), "wb"));
  if (!file) throw IoError("cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("cannot allocate PNG writer");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("cannot write " + path.string());
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, grid.width, grid.height, bit_depth, color, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = static_cast<std::size_t>(grid.width) * grid.channels * bytes;
  for (int r = 0; r < grid.height; ++r) png_write_row(png, pixels.data() + r * stride);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void write_sgr(const SgrMap& map, const std::filesystem::path& path) {
  const auto ranges = map.quantization.empty() ? channel_ranges(map.grid) : map.quantization;
  const int depth = map.kind == SgrKind::geometry ? 16 : 8;
  write_grid_png(map.grid, ranges, depth, path);

  const auto meta = sidecar_path(path);
  std::ofstream out(meta, std::ios::binary);
  if (!out) throw IoError("cannot write " + meta.string());
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, map.source_hash);
  out << "kind: " << to_string(map.kind) << '\n'
      << "width: " << map.grid.width << '\n'
      << "height: " << map.grid.height << '\n'
      << "channels: " << map.grid.channels << '\n'
      << "bit_depth: " << depth << '\n';
  for (std::size_t c = 0; c < ranges.size(); ++c) {
    out << "min_" << c << ": " << g17(ranges[c].min) << '\n';
    out << "max_" << c << ": " << g17(ranges[c].max) << '\n';
    out << "constant_" << c << ": " << (ranges[c].constant() ? "true" : "false") << '\n';
  }
  out << "source_hash: " << hash << '\n';
  if (!out) throw IoError("cannot write " + meta.string());
}

SgrMap read_sgr(const std::filesystem::path& path) {
  const auto meta = sidecar_path(path);
  std::ifstream in(meta);
  if (!in) throw IoError(path.string() + ": missing quantization metadata");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw IoError(meta.string() + ": malformed line '" + line + "'");
    std::string value = line.substr(colon + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    kv[line.substr(0, colon)] = value;
  }
  const std::string name = meta.string();
  SgrMap map;
  try {
    map.kind = kind_from_string(kv.count("kind") ? kv["kind"] : "");
  } catch (const std::invalid_argument& e) {
    throw IoError(name + ": " + e.what());
  }
  const int channels = static_cast<int>(parse_double(kv, "channels", name));
  const int depth = static_cast<int>(parse_double(kv, "bit_depth", name));
  const int width = static_cast<int>(parse_double(kv, "width", name));
  const int height = static_cast<int>(parse_double(kv, "height", name));
  for (int c = 0; c < channels; ++c)
    map.quantization.push_back(
        {parse_double(kv, "min_" + std::to_string(c), name), parse_double(kv, "max_" + std::to_string(c), name)});
  if (kv.count("source_hash")) map.source_hash = std::strtoull(kv["source_hash"].c_str(), nullptr, 16);

  FilePtr file(std::fopen(path.string().c_str(), "rb"));
  if (!file) throw IoError("cannot read " + path.string());
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw IoError(path.string() + ": not a PNG file");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("cannot allocate PNG reader");
  }
  std::vector<unsigned char> pixels;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path.string() + ": corrupt PNG");
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  const int d = png_get_bit_depth(png, info);
  const int ch = png_get_channels(png, info);
  if (w != width || h != height || d != depth || ch != channels) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path.string() + ": image does not match its metadata");
  }
  const std::size_t stride = png_get_rowbytes(png, info);
  pixels.resize(stride * h);
  for (int r = 0; r < h; ++r) png_read_row(png, pixels.data() + r * stride, nullptr);
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const double levels = depth == 16 ? 65535.0 : 255.0;
  map.grid = Grid(h, w, ch);
  for (std::size_t k = 0; k < map.grid.data.size(); ++k) {
    const unsigned q = depth == 16 ? (pixels[2 * k] << 8) | pixels[2 * k + 1] : pixels[k];
    const ChannelRange& r = map.quantization[k % ch];
    map.grid.data[k] = r.constant() ? r.min : r.min + (r.max - r.min) * (q / levels);
  }
  if (map.grid.width == map.grid.height && map.grid.width >= 2) map.weld = uniform_grid(map.grid.width).weld;
  return map;
}

}  // namespace sgr
