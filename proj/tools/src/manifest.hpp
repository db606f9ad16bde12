#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ouarea::cli {

std::string sha256_hex(const std::filesystem::path& file);

/// Collects what a run produced: files with content hashes, generator tags
/// and per-stage wall-clock timings.
class RunRecorder {
 public:
  explicit RunRecorder(std::filesystem::path out_dir);

  const std::filesystem::path& out_dir() const noexcept { return out_; }

  /// Writes `name` inside the output directory through `body` and records it.
  void write_file(const std::string& name, const std::function<void(std::ostream&)>& body);

  void add_generator(std::string tag) { generators_.insert(std::move(tag)); }

  /// Runs `body` and records its duration under `stage`.
  void timed(const std::string& stage, const std::function<void()>& body);

  /// run_manifest.json in the output directory.
  void write_manifest(const std::string& command, const nlohmann::json& config,
                      const nlohmann::json& summary, int exit_code);

 private:
  std::filesystem::path out_;
  std::chrono::system_clock::time_point started_;
  std::chrono::steady_clock::time_point clock_;
  std::vector<std::string> files_;
  std::set<std::string> generators_;
  std::vector<std::pair<std::string, double>> stages_;
};

}  // namespace ouarea::cli
