#include "manifest.hpp"

#include <chrono>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "vaxwane/error.hpp"
#include "vaxwane/io/csv.hpp"
#include "vaxwane/version.hpp"

namespace vaxwane::cli {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunManifest::RunManifest(std::string command, std::string config_hash, std::uint64_t base_seed)
    : command_(std::move(command)),
      config_hash_(std::move(config_hash)),
      base_seed_(base_seed),
      started_at_(utc_now()) {}

void RunManifest::add_output(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read back output: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  outputs_.emplace_back(path.filename().string(), io::to_hex(io::fnv1a64(buf.str())));
}

void RunManifest::add_note(std::string note) { notes_.push_back(std::move(note)); }

void RunManifest::write(const std::filesystem::path& manifest_path) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& [path, digest] : outputs_) {
    outputs.push_back({{"path", path}, {"fnv1a64", digest}});
  }
  const nlohmann::json j{{"command", command_},
                         {"tool_version", kVersion},
                         {"config_hash", config_hash_},
                         {"base_seed", base_seed_},
                         {"started_at", started_at_},
                         {"finished_at", utc_now()},
                         {"outputs", outputs},
                         {"notes", notes_}};
  auto out = open_output(manifest_path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing manifest: " + manifest_path.string());
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output for writing: " + path.string());
  return out;
}

}  // namespace vaxwane::cli
