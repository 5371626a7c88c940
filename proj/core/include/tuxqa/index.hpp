#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tuxqa/corpus.hpp"
#include "tuxqa/text.hpp"

namespace tuxqa {

enum class Field { Title = 0, Body = 1 };

std::string_view to_string(Field field) noexcept;

/// Weights of the per-field cosines in the combined score. Non-negative and
/// summing to one.
struct FieldWeights {
  double title = 0.5;
  double body = 0.5;

  /// Throws DomainError unless both are >= 0 and they sum to 1 (within 1e-9).
  void validate() const;
  double operator[](Field f) const noexcept { return f == Field::Title ? title : body; }
  friend bool operator==(const FieldWeights&, const FieldWeights&) = default;
};

struct TermWeight {
  std::string term;
  double weight = 0.0;
  friend bool operator==(const TermWeight&, const TermWeight&) = default;
};

/// Sparse vector sorted by term. Absent terms have weight 0.
using SparseVector = std::vector<TermWeight>;

struct ScoredDoc {
  PostId question_id = 0;
  double tfidf_score = 0.0;
  friend bool operator==(const ScoredDoc&, const ScoredDoc&) = default;
};

inline constexpr int kIndexFormatVersion = 1;
inline constexpr std::size_t kDefaultTopK = 20;

namespace detail {
struct IndexCodec;
}

/// Per-field tf-idf inverted index over the questions of a corpus.
///
/// Raw term weight is tf * ln(n_docs / df_field(t)); each document's field
/// vector is L2-normalised (or left as the zero vector). Document frequency
/// is counted separately for titles and bodies. Immutable once built.
class TfIdfIndex {
public:
  std::size_t n_docs() const noexcept { return doc_ids_.size(); }
  std::span<const PostId> doc_ids() const noexcept { return doc_ids_; }
  const FieldWeights& weights() const noexcept { return weights_; }
  bool contains(PostId id) const noexcept { return slots_.contains(id); }

  /// 0 for unknown terms.
  std::uint32_t df(Field field, std::string_view term) const;
  std::size_t vocabulary_size(Field field) const noexcept;
  /// Throws UnknownQuestion for ids not in the index.
  SparseVector doc_vector(Field field, PostId id) const;

  SparseVector query_vector(Field field, std::span<const std::string> keywords) const;

  /// Questions with a positive combined score, best first, ties by id.
  std::vector<ScoredDoc> score(std::span<const std::string> keywords) const;
  std::vector<ScoredDoc> score(std::span<const std::string> keywords, const FieldWeights& weights) const;

  friend TfIdfIndex build_index(const Corpus& corpus, const Analyzer& analyzer,
                                const FieldWeights& weights);
  friend struct detail::IndexCodec;

private:
  struct Posting {
    std::uint32_t slot;
    double weight;
  };
  using Entry = std::pair<std::uint32_t, double>;  // term id, weight

  struct FieldData {
    std::unordered_map<std::string, std::uint32_t> term_ids;
    std::vector<std::string> terms;
    std::vector<std::uint32_t> df;
    std::vector<std::vector<Posting>> postings;
    std::vector<std::vector<Entry>> doc_vectors;  // per slot, sorted by term id
  };

  TfIdfIndex() = default;
  std::vector<Entry> query_entries(const FieldData& data, std::span<const std::string> keywords) const;
  SparseVector to_sparse(const FieldData& data, const std::vector<Entry>& entries) const;
  const FieldData& field(Field f) const noexcept { return fields_[static_cast<std::size_t>(f)]; }
  void rebuild_postings();

  std::vector<PostId> doc_ids_;
  std::unordered_map<PostId, std::uint32_t> slots_;
  std::array<FieldData, 2> fields_;
  FieldWeights weights_;
};

/// Indexes every question: title keywords and markup-stripped body keywords.
/// Throws EmptyCorpus when there are no questions.
TfIdfIndex build_index(const Corpus& corpus, const Analyzer& analyzer,
                       const FieldWeights& weights = {});

inline SparseVector query_vector(const TfIdfIndex& index, Field field,
                                 std::span<const std::string> keywords) {
  return index.query_vector(field, keywords);
}

inline std::vector<ScoredDoc> score_questions(const TfIdfIndex& index,
                                              std::span<const std::string> keywords) {
  return index.score(keywords);
}

/// First min(k, size) entries. Throws DomainError when k == 0.
std::vector<ScoredDoc> top_k(std::span<const ScoredDoc> scored, std::size_t k = kDefaultTopK);

/// Standalone index artifact (JSON with a format_version field).
void save_index(const TfIdfIndex& index, const std::filesystem::path& path);
/// Throws FormatVersionMismatch for artifacts written by another format version.
TfIdfIndex load_index(const std::filesystem::path& path);

}  // namespace tuxqa
