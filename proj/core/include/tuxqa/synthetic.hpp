#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tuxqa/corpus.hpp"
#include "tuxqa/eval.hpp"

namespace tuxqa {

/// Parameters of the synthetic Ubuntu-style Q&A generator.
///
/// Each question is built from a unique (verb, object, tag, tag) tuple and
/// one of several factual or troubleshooting title templates; bodies mix the
/// same terms with shared filler vocabulary and <code> snippets. Every
/// question gets one gold query: a paraphrase written with a different
/// template, optional verb and object synonyms and at most one tag alias. Output
/// depends only on these options (std::mt19937_64, modulo draws).
struct SyntheticOptions {
  std::size_t questions = 200;
  std::uint64_t seed = 20160501;
  unsigned answered_percent = 85;        // questions with an accepted answer
  unsigned troubleshooting_percent = 35; // questions using a troubleshooting template
};

struct SyntheticDataset {
  Corpus corpus;
  TagCatalog catalog;
  std::vector<GoldQuery> gold;
};

SyntheticDataset generate_synthetic(const SyntheticOptions& options = {});

/// Writes corpus.jsonl, tags.txt, tag_synonyms.csv and gold_queries.csv.
void write_synthetic(const SyntheticDataset& dataset, const std::filesystem::path& dir);

/// CSV field with RFC 4180 quoting.
std::string csv_quote(std::string_view field);

}  // namespace tuxqa
