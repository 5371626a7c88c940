#include "tuxqa/semvec.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tuxqa/errors.hpp"

namespace tuxqa {

namespace {

constexpr std::array<std::string_view, 25> kAuxiliaries{
    "is",   "are",   "was",    "were",   "be",     "been",  "being", "do",    "does",
    "did",  "have",  "has",    "had",    "can",    "could", "will",  "would", "should",
    "may",  "might", "must",   "won't",  "can't",  "doesn't", "don't"};

}  // namespace

bool is_auxiliary(std::string_view word) noexcept {
  return std::find(kAuxiliaries.begin(), kAuxiliaries.end(), word) != kAuxiliaries.end();
}

std::size_t HeuristicRootFinder::find_root(std::span<const Token> tokens) const {
  if (tokens.empty()) throw EmptyInput("cannot find the root of an empty sentence");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].pos == Pos::Verb && !is_auxiliary(tokens[i].normalized)) return i;
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].pos == Pos::Noun && !catalog_->canonical_tag(tokens[i].normalized)) return i;
  }
  return 0;
}

WordVector build_word_vector(std::span<const Token> tokens, std::size_t root,
                             const TagCatalog& catalog) {
  if (root >= tokens.size()) throw DomainError("root position out of range");
  const auto root_index = tokens[root].index;
  WordVector vec;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i == root) continue;
    auto tag = catalog.canonical_tag(tokens[i].normalized);
    if (!tag) continue;
    const auto idx = tokens[i].index;
    const auto distance = static_cast<std::uint32_t>(idx > root_index ? idx - root_index : root_index - idx);
    if (distance == 0) continue;
    auto [it, inserted] = vec.entries.emplace(std::move(*tag), distance);
    if (!inserted) it->second = std::min(it->second, distance);
  }
  return vec;
}

double cosine(const WordVector& q, const WordVector& c) {
  if (q.empty() || c.empty()) return 0.0;
  double dot = 0.0;
  auto qi = q.entries.begin();
  auto ci = c.entries.begin();
  while (qi != q.entries.end() && ci != c.entries.end()) {
    if (qi->first < ci->first) {
      ++qi;
    } else if (ci->first < qi->first) {
      ++ci;
    } else {
      dot += static_cast<double>(qi->second) * static_cast<double>(ci->second);
      ++qi;
      ++ci;
    }
  }
  if (dot == 0.0) return 0.0;
  double qq = 0.0;
  double cc = 0.0;
  for (const auto& [_, d] : q.entries) qq += static_cast<double>(d) * d;
  for (const auto& [_, d] : c.entries) cc += static_cast<double>(d) * d;
  return std::clamp(dot / (std::sqrt(qq) * std::sqrt(cc)), 0.0, 1.0);
}

SimilarityScore fuse(double cosine, double tfidf_score) {
  const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(cosine)) throw DomainError("cosine outside [0,1]: " + std::to_string(cosine));
  if (!in_unit(tfidf_score)) throw DomainError("tf-idf score outside [0,1]: " + std::to_string(tfidf_score));
  return {cosine, tfidf_score, cosine * tfidf_score};
}

}  // namespace tuxqa
