#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tuxqa/classify.hpp"
#include "tuxqa/corpus.hpp"
#include "tuxqa/index.hpp"
#include "tuxqa/semvec.hpp"
#include "tuxqa/text.hpp"

namespace tuxqa {

/// Word lists the pipeline needs beyond the corpus and tag catalog.
struct EngineResources {
  Analyzer analyzer;
  NegativeLexicon negative_words;

  static EngineResources bundled();
};

struct Candidate {
  PostId question_id = 0;
  double tfidf_score = 0.0;
  QueryCategory category = QueryCategory::Factual;
  WordVector word_vector;
  SimilarityScore score;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct Selection {
  PostId question_id = 0;
  PostId answer_id = 0;
  friend bool operator==(const Selection&, const Selection&) = default;
};

/// Wall-clock time spent in each pipeline stage, in milliseconds.
struct StageTimings {
  double analyze_ms = 0.0;    // tokenize, tag, keywords
  double retrieve_ms = 0.0;   // tf-idf scoring and top-k cut
  double classify_ms = 0.0;   // query and candidate categories, filter
  double semantic_ms = 0.0;   // root finding, word vectors, fusion
  double rank_ms = 0.0;
  double select_ms = 0.0;     // answer fallback walk
  double total_ms = 0.0;

  std::vector<std::pair<std::string, double>> as_pairs() const;
};

struct QueryResult {
  QueryCategory query_category = QueryCategory::Factual;
  std::vector<std::string> keywords;
  WordVector query_vector;
  std::vector<ScoredDoc> retrieved;   // tf-idf top-k, before the category filter
  std::vector<Candidate> candidates;  // filtered and re-ranked
  std::optional<Selection> selected;
  std::size_t fallback_steps = 0;     // answerless candidates skipped
  StageTimings timings;
};

struct QueryOptions {
  std::size_t k = kDefaultTopK;
  std::optional<FieldWeights> weights;  // overrides the index's weights
};

/// Candidates of `query_category`; all of them when none match.
std::vector<Candidate> filter_by_category(std::vector<Candidate> candidates,
                                          QueryCategory query_category);

/// Fused score descending, then tf-idf descending, then id ascending.
std::vector<Candidate> rank(std::vector<Candidate> candidates);

/// Tokens of the first sentence of `text`, or of all of it when the first
/// sentence has none.
std::vector<Token> first_sentence_tokens(const Analyzer& analyzer, std::string_view text);

/// Retrieval and re-ranking over one corpus. Immutable after construction;
/// answer_query may be called from several threads at once.
class Engine {
public:
  /// `index` may be empty, in which case queries throw IndexNotBuilt. When
  /// present it must cover exactly the questions of `corpus`.
  Engine(Corpus corpus, TagCatalog catalog, EngineResources resources,
         std::optional<TfIdfIndex> index = std::nullopt);

  static Engine build(Corpus corpus, TagCatalog catalog, EngineResources resources,
                      const FieldWeights& weights = {});

  /// Swaps the default heuristic for another root finder.
  void set_root_finder(std::shared_ptr<const RootFinder> finder) { root_finder_ = std::move(finder); }

  QueryResult answer_query(std::string_view text, const QueryOptions& options = {}) const;
  QueryResult answer_query(std::string_view text, std::size_t k) const {
    return answer_query(text, QueryOptions{k, std::nullopt});
  }

  /// IR stage only: tf-idf top-k for the query's keywords.
  std::vector<ScoredDoc> retrieve(std::string_view text, const QueryOptions& options = {}) const;

  QueryCategory classify_text(std::string_view text) const;

  bool has_index() const noexcept { return index_.has_value(); }
  const TfIdfIndex& index() const;
  const Corpus& corpus() const noexcept { return corpus_; }
  const TagCatalog& catalog() const noexcept { return catalog_; }
  const EngineResources& resources() const noexcept { return resources_; }

private:
  std::size_t root_of(std::span<const Token> tokens) const;
  WordVector sentence_vector(std::string_view text) const;

  Corpus corpus_;
  TagCatalog catalog_;
  EngineResources resources_;
  std::optional<TfIdfIndex> index_;
  std::shared_ptr<const RootFinder> root_finder_;
};

/// Whole engine state (corpus, tag catalog, index) as one JSON artifact with
/// a format_version field. Word lists are not stored; pass them at load.
void save_engine(const Engine& engine, const std::filesystem::path& path);
Engine load_engine(const std::filesystem::path& path,
                   EngineResources resources = EngineResources::bundled());

}  // namespace tuxqa
