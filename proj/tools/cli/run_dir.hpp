#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lexlab::cli {

/// Output directory for one run. Artifacts are written to a private staging
/// directory and only moved into place by commit(); a RunDir destroyed
/// without commit() leaves the output directory untouched, and removes it
/// again if it was created here.
class RunDir {
 public:
  explicit RunDir(std::filesystem::path out_dir);
  ~RunDir();
  RunDir(const RunDir&) = delete;
  RunDir& operator=(const RunDir&) = delete;

  /// Staging path for an artifact; artifacts are committed in request order.
  std::filesystem::path file(const std::string& name);
  void write_text(const std::string& name, const std::string& content);

  /// Writes checksums.sha256 over every artifact except the manifest, then
  /// moves everything into the output directory.
  void commit();

  const std::filesystem::path& out_dir() const noexcept { return out_; }

 private:
  std::filesystem::path out_;
  std::filesystem::path staging_;
  std::vector<std::string> names_;
  bool committed_ = false;
  bool created_ = false;
};

inline constexpr const char* kManifestName = "manifest.ini";

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace lexlab::cli
