// Engine artifact: corpus, tag catalog and tf-idf index in one JSON file.

#include <json.hpp>

#include "index_codec.hpp"
#include "io_util.hpp"
#include "tuxqa/engine.hpp"
#include "tuxqa/errors.hpp"

namespace tuxqa {

using nlohmann::json;

void save_engine(const Engine& engine, const std::filesystem::path& path) {
  json j;
  j["format_version"] = kIndexFormatVersion;
  j["corpus_jsonl"] = to_jsonl(engine.corpus());
  j["catalog"] = {{"tags", engine.catalog().canonical_tags()}, {"synonyms", engine.catalog().synonyms()}};
  j["index"] = detail::IndexCodec::to_json(engine.index());
  detail::write_file(path, j.dump());
}

Engine load_engine(const std::filesystem::path& path, EngineResources resources) {
  json j;
  try {
    j = json::parse(detail::read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
  detail::check_format_version(j);

  std::string corpus_jsonl;
  std::set<std::string> tags;
  std::map<std::string, std::string> synonyms;
  try {
    corpus_jsonl = j.at("corpus_jsonl").get<std::string>();
    tags = j.at("catalog").at("tags").get<std::set<std::string>>();
    synonyms = j.at("catalog").at("synonyms").get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    throw ParseError(0, path.string() + ": malformed engine artifact: " + e.what());
  }
  if (!j.contains("index")) throw ParseError(0, path.string() + ": engine artifact has no index");
  auto index = detail::IndexCodec::from_json(j["index"]);
  return Engine(parse_jsonl(corpus_jsonl), TagCatalog(std::move(tags), std::move(synonyms)),
                std::move(resources), std::move(index));
}

}  // namespace tuxqa
