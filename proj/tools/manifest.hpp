#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace vaxwane::cli {

/// Reproducibility record written alongside every output set. Data outputs
/// are byte-stable for a given config and seed; the manifest itself carries
/// wall-clock timestamps and content digests of the outputs.
class RunManifest {
 public:
  RunManifest(std::string command, std::string config_hash, std::uint64_t base_seed);

  void add_output(const std::filesystem::path& path);
  void add_note(std::string note);
  void write(const std::filesystem::path& manifest_path);

 private:
  std::string command_;
  std::string config_hash_;
  std::uint64_t base_seed_;
  std::string started_at_;
  std::vector<std::pair<std::string, std::string>> outputs_;  // path, digest
  std::vector<std::string> notes_;
};

/// Opens `path` for writing, throws IoError on failure.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace vaxwane::cli
