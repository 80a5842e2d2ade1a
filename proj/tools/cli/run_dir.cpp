#include "run_dir.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <memory>

#include "lexlab/error.hpp"

namespace lexlab::cli {

namespace fs = std::filesystem;

RunDir::RunDir(fs::path out_dir) : out_(std::move(out_dir)) {
  created_ = !fs::exists(out_);
  fs::create_directories(out_);
  staging_ = out_ / (".staging-" + std::to_string(::getpid()));
  fs::remove_all(staging_);
  fs::create_directories(staging_);
}

RunDir::~RunDir() {
  std::error_code ec;
  fs::remove_all(staging_, ec);
  if (!committed_ && created_ && fs::is_empty(out_, ec)) fs::remove(out_, ec);
}

fs::path RunDir::file(const std::string& name) {
  if (std::find(names_.begin(), names_.end(), name) == names_.end()) names_.push_back(name);
  return staging_ / name;
}

void RunDir::write_text(const std::string& name, const std::string& content) {
  std::ofstream os(file(name), std::ios::binary);
  os << content;
  if (!os) throw Error("cannot write " + (staging_ / name).string());
}

void RunDir::commit() {
  std::string sums;
  for (const auto& n : names_)
    if (n != kManifestName) sums += sha256_file(staging_ / n) + "  " + n + "\n";
  write_text("checksums.sha256", sums);
  for (const auto& n : names_) fs::rename(staging_ / n, out_ / n);
  committed_ = true;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot read " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 failed for " + path.string());
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[digest[k] >> 4];
    out += hex[digest[k] & 0xF];
  }
  return out;
}

}  // namespace lexlab::cli
