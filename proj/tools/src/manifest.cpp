#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#ifndef OUAREA_VERSION
#define OUAREA_VERSION "unknown"
#endif

namespace ouarea::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest initialisation failed");
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::ostringstream os;
  for (unsigned q = 0; q < len; ++q) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[q]);
  return os.str();
}

RunRecorder::RunRecorder(fs::path out_dir)
    : out_(std::move(out_dir)), started_(std::chrono::system_clock::now()), clock_(std::chrono::steady_clock::now()) {
  fs::create_directories(out_);
}

void RunRecorder::write_file(const std::string& name, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(out_ / name, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + (out_ / name).string());
  body(os);
  os.close();
  if (!os) throw std::runtime_error("write failed: " + (out_ / name).string());
  files_.push_back(name);
}

void RunRecorder::timed(const std::string& stage, const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body();
  stages_.emplace_back(stage, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

void RunRecorder::write_manifest(const std::string& command, const nlohmann::json& config,
                                 const nlohmann::json& summary, int exit_code) {
  nlohmann::json m;
  m["manifest_version"] = 1;
  m["tool"] = "ouarea";
  m["tool_version"] = OUAREA_VERSION;
  m["command"] = command;
  m["config"] = config;
  if (config.contains("seed")) m["seeds"] = {{"root", config["seed"]}, {"substreams", "derive_seed(root, path)"}};
  m["generators"] = generators_;
  const std::time_t t = std::chrono::system_clock::to_time_t(started_);
  std::tm utc{};
  gmtime_r(&t, &utc);
  std::ostringstream when;
  when << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  m["started_utc"] = when.str();
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& [name, sec] : stages_) stages.push_back({{"stage", name}, {"seconds", sec}});
  m["timings"] = {{"stages", stages},
                  {"total_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_).count()}};
  m["summary"] = summary;
  m["exit_code"] = exit_code;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : files_)
    files.push_back({{"path", f}, {"bytes", fs::file_size(out_ / f)}, {"sha256", sha256_hex(out_ / f)}});
  m["files"] = files;
  std::ofstream os(out_ / "run_manifest.json", std::ios::trunc);
  os << m.dump(2) << '\n';
}

}  // namespace ouarea::cli
