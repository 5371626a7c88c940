#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "tuxqa/text.hpp"

namespace tuxqa {

enum class QueryCategory { Factual, Troubleshooting };

std::string_view to_string(QueryCategory category) noexcept;
std::optional<QueryCategory> parse_category(std::string_view name) noexcept;

/// Words whose presence marks a sentence as describing a malfunction.
class NegativeLexicon {
public:
  /// Throws InvariantError when empty or when an entry is not a single
  /// lowercase word.
  explicit NegativeLexicon(std::set<std::string> words);

  static const NegativeLexicon& bundled();

  bool contains(std::string_view word) const { return words_.contains(std::string(word)); }
  const std::set<std::string>& words() const noexcept { return words_; }

private:
  std::set<std::string> words_;
};

// One word per line, '#' comments ignored.
NegativeLexicon parse_negative_lexicon(std::string_view content);
NegativeLexicon load_negative_lexicon(const std::filesystem::path& path);

/// Lexical negation: a marker word (not, never, won't, ...) or any token
/// ending in the "n't" clitic.
bool detect_negation(std::span<const Token> tokens);
bool contains_negative_word(std::span<const Token> tokens, const NegativeLexicon& lexicon);

/// Troubleshooting iff the tokens carry a negation or a negative-sense word.
QueryCategory classify(std::span<const Token> tokens, const NegativeLexicon& lexicon);

}  // namespace tuxqa
