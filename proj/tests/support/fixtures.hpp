#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "tuxqa/engine.hpp"

namespace fixtures {

inline std::filesystem::path path(const std::string& name) {
  return std::filesystem::path(TUXQA_FIXTURE_DIR) / name;
}

inline tuxqa::TagCatalog catalog(const std::string& dir) {
  return tuxqa::load_tag_catalog(path(dir + "/tags.txt"), path(dir + "/tag_synonyms.csv"));
}

inline tuxqa::Engine engine(const std::string& dir, const tuxqa::FieldWeights& weights = {}) {
  return tuxqa::Engine::build(tuxqa::load_jsonl(path(dir + "/corpus.jsonl")), catalog(dir),
                              tuxqa::EngineResources::bundled(), weights);
}

// The catalog used in the worked example: {ubuntu, windows}.
inline tuxqa::TagCatalog ubuntu_windows() { return tuxqa::TagCatalog({"ubuntu", "windows"}, {}); }

// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& stem) {
    std::random_device rd;
    dir_ = std::filesystem::temp_directory_path() / (stem + "-" + std::to_string(rd()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return dir_; }
  std::filesystem::path operator/(const std::string& name) const { return dir_ / name; }

private:
  std::filesystem::path dir_;
};

}  // namespace fixtures
