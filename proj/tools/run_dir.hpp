#ifndef EFLOWER_TOOLS_RUN_DIR_HPP
#define EFLOWER_TOOLS_RUN_DIR_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "eflower/error.hpp"

namespace eflower::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

inline std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

inline void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::io_error, "failed writing " + path.string());
}

/// A run directory: config.json first, outputs, then manifest.json last.
/// INCOMPLETE exists while the run is in progress and keeps the failure
/// reason if it does not finish.
class RunDir {
 public:
  static constexpr const char* kSentinel = "INCOMPLETE";
  static constexpr const char* kManifest = "manifest.json";

  RunDir(fs::path root, json config) : root_(std::move(root)), config_(std::move(config)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw Error(ErrorCode::io_error, "cannot create run directory " + root_.string());
    fs::remove(root_ / kManifest, ec);
    write_text(root_ / kSentinel, "running\n");
    write_text(root_ / "config.json", config_.dump(2) + "\n");
    started_ = std::chrono::steady_clock::now();
  }

  const fs::path& path() const { return root_; }
  fs::path file(const std::string& name) const { return root_ / name; }

  void write(const std::string& name, const std::string& text) const {
    fs::create_directories((root_ / name).parent_path());
    write_text(root_ / name, text);
  }

  void count_termination(const std::string& what, std::size_t n = 1) { terminations_[what] += n; }

  void fail(ErrorCode code, const std::string& message) const {
    json reason{{"status", "failed"}, {"code", std::string(to_string(code))}, {"message", message}};
    try {
      write_text(root_ / kSentinel, reason.dump(2) + "\n");
    } catch (const Error&) {
    }
  }

  /// Removes the sentinel and writes the manifest over every remaining file.
  void finish(const std::string& version) {
    fs::remove(root_ / kSentinel);
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root_))
      if (entry.is_regular_file() && entry.path().filename() != kManifest) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    json outputs = json::object();
    for (const auto& f : files) outputs[fs::relative(f, root_).generic_string()] = {{"sha256", sha256_file(f)}};
    json terms = json::object();
    for (const auto& [k, v] : terminations_) terms[k] = v;
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    json manifest{{"tool", "eflower"},         {"version", version}, {"config", config_},
                  {"wall_time_seconds", wall}, {"files", outputs},   {"terminations", terms}};
    write_text(root_ / kManifest, manifest.dump(2) + "\n");
  }

 private:
  fs::path root_;
  json config_;
  std::map<std::string, std::size_t> terminations_;
  std::chrono::steady_clock::time_point started_;
};

}  // namespace eflower::cli

#endif  // EFLOWER_TOOLS_RUN_DIR_HPP
