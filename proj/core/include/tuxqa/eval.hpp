#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tuxqa/classify.hpp"
#include "tuxqa/corpus.hpp"
#include "tuxqa/engine.hpp"

namespace tuxqa {

struct GoldQuery {
  std::string query_text;
  PostId gold_question_id = 0;
};

/// "query text",gold_question_id per line. Ids must be questions of `corpus`
/// (InvariantError otherwise). An optional header row is skipped.
std::vector<GoldQuery> parse_gold_queries(std::string_view content, const Corpus& corpus);
std::vector<GoldQuery> load_gold_queries(const std::filesystem::path& path, const Corpus& corpus);

enum class Grade { Unacceptable = 0, Fair = 1, Acceptable = 2 };

struct Judgment {
  std::string query_text;
  Grade grade = Grade::Unacceptable;
};

/// "query text",grade per line; grade is 0/1/2 or its name.
std::vector<Judgment> parse_judgments(std::string_view content);
std::vector<Judgment> load_judgments(const std::filesystem::path& path);

struct JudgmentTotals {
  std::size_t unacceptable = 0;
  std::size_t fair = 0;
  std::size_t acceptable = 0;
  std::size_t total_score = 0;  // fair + 2 * acceptable
  std::size_t max_score = 0;    // 2 * count

  std::size_t count() const noexcept { return unacceptable + fair + acceptable; }
  friend bool operator==(const JudgmentTotals&, const JudgmentTotals&) = default;
};

JudgmentTotals aggregate_judgments(std::span<const Judgment> judgments);

struct LatencyStats {
  std::size_t count = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;  // lower middle for even counts
  double p95_ms = 0.0;     // nearest rank
};

/// Throws EmptySamples on an empty input.
LatencyStats latency_stats(std::span<const double> samples_ms);

struct RecallReport {
  std::size_t queries = 0;
  std::map<std::size_t, double> ir;        // gold within the first k tf-idf results
  std::map<std::size_t, double> reranked;  // gold within the first k final candidates
  std::size_t candidate_k = kDefaultTopK;  // candidate count used for the re-ranked variant
  std::size_t gold_retrieved = 0;          // gold among the candidate_k tf-idf results
  std::size_t lost_to_category_filter = 0; // ... but dropped by the category filter
};

struct EvalOptions {
  std::vector<std::size_t> ks{1, 5, 10, 20};
  std::size_t candidate_k = kDefaultTopK;
  bool parallel = false;  // recall only; latency is not sampled
};

/// Throws EmptyGoldSet when `gold` is empty.
RecallReport recall_at_k(const Engine& engine, std::span<const GoldQuery> gold,
                         const EvalOptions& options = {});

struct CategorySlice {
  std::optional<RecallReport> recall;
  std::optional<JudgmentTotals> judgments;
  std::optional<LatencyStats> latency;
};

struct EvalReport {
  RecallReport recall;
  std::optional<JudgmentTotals> judgments;
  std::optional<LatencyStats> latency;
  std::map<QueryCategory, CategorySlice> per_category;
};

/// Recall over `gold`, plus judgment totals when given. Queries are split by
/// the category the engine assigns them.
EvalReport evaluate(const Engine& engine, std::span<const GoldQuery> gold,
                    std::span<const Judgment> judgments = {}, const EvalOptions& options = {});

std::string report_to_json(const EvalReport& report);
std::string report_to_text(const EvalReport& report);

}  // namespace tuxqa
