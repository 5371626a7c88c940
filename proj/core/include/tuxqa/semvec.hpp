#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "tuxqa/corpus.hpp"
#include "tuxqa/text.hpp"

namespace tuxqa {

/// Canonical tag -> distance (in tokens) from the sentence's root word.
struct WordVector {
  std::map<std::string, std::uint32_t> entries;

  bool empty() const noexcept { return entries.empty(); }
  friend bool operator==(const WordVector&, const WordVector&) = default;
};

struct SimilarityScore {
  double cosine = 0.0;
  double tfidf_score = 0.0;
  double fused = 0.0;  // cosine * tfidf_score
  friend bool operator==(const SimilarityScore&, const SimilarityScore&) = default;
};

/// Picks the theme word of a sentence. Implementations return a position in
/// `tokens` and throw EmptyInput for an empty sentence.
class RootFinder {
public:
  virtual ~RootFinder() = default;
  virtual std::size_t find_root(std::span<const Token> tokens) const = 0;
};

/// First non-auxiliary verb; else the first noun that is not a known tag;
/// else position 0.
class HeuristicRootFinder final : public RootFinder {
public:
  explicit HeuristicRootFinder(const TagCatalog& catalog) : catalog_(&catalog) {}
  std::size_t find_root(std::span<const Token> tokens) const override;

private:
  const TagCatalog* catalog_;
};

bool is_auxiliary(std::string_view word) noexcept;

inline std::size_t find_root(std::span<const Token> tokens, const TagCatalog& catalog) {
  return HeuristicRootFinder(catalog).find_root(tokens);
}

/// Distance of every tag mention from the root token, by absolute token
/// index difference; the closest mention wins and the root itself is skipped.
/// Throws DomainError when `root` is not a position in `tokens`.
WordVector build_word_vector(std::span<const Token> tokens, std::size_t root,
                             const TagCatalog& catalog);

/// Q.C / (|Q| |C|); 0 when either vector is empty.
double cosine(const WordVector& q, const WordVector& c);

/// Throws DomainError unless both inputs lie in [0, 1].
SimilarityScore fuse(double cosine, double tfidf_score);

}  // namespace tuxqa
