#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgr/metrics.hpp"
#include "sgr/sgr_codec.hpp"
#include "sgr/sphere_param.hpp"

namespace sgr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitIo = 2;

struct PipelineConfig {
  int resolution = 256;
  ParamConfig param;
  RegWeights reg_weights;
  std::size_t chamfer_samples = kDefaultChamferSamples;
  double tau_mm = 1.0;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = ".";
  std::vector<int> ladder{32, 64, 128, 256};

  /// Throws std::invalid_argument when a value is out of range.
  void validate() const;
};

/// Each command prints to `out` and returns through exceptions: IoError for files and parsing,
/// DomainError for data that fails a contract. main() maps them to exit codes.
int cmd_validate(const std::filesystem::path& mesh_path, std::ostream& out);
int cmd_param(const std::filesystem::path& mesh_path, const std::optional<std::filesystem::path>& out_path,
              const PipelineConfig& cfg, std::ostream& out);
int cmd_bake(const std::filesystem::path& mesh_path, const std::filesystem::path& embedding_path, SgrKind kind,
             const std::optional<std::filesystem::path>& out_path, const PipelineConfig& cfg, std::ostream& out);
int cmd_reconstruct(const std::filesystem::path& sgr_path, const std::optional<std::filesystem::path>& out_path,
                    const PipelineConfig& cfg, std::ostream& out);
int cmd_roundtrip(const std::filesystem::path& mesh_path, const std::optional<std::filesystem::path>& report_path,
                  const PipelineConfig& cfg, std::ostream& out);
int cmd_metrics(const std::vector<std::filesystem::path>& meshes, bool batch,
                const std::optional<std::filesystem::path>& json_path, const PipelineConfig& cfg, std::ostream& out);
int cmd_metrics_table(const std::filesystem::path& report_path, std::ostream& out);
int cmd_pad(const std::filesystem::path& sgr_path, const std::optional<std::filesystem::path>& out_path,
            const PipelineConfig& cfg, std::ostream& out);

/// Per-vertex signal for a map kind: positions (geometry), normals mapped to [0, 1] (texture),
/// or signed distance from the mean radius (displacement, one channel).
std::vector<double> signal_for_kind(const TriangleMesh& mesh, SgrKind kind, int& channels);

}  // namespace sgr::cli
