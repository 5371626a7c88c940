#include "tuxqa/classify.hpp"

#include <algorithm>
#include <array>

#include "io_util.hpp"
#include "resources.hpp"
#include "tuxqa/errors.hpp"

namespace tuxqa {

namespace {

constexpr std::array<std::string_view, 21> kNegationMarkers{
    "not",    "no",      "never",  "cannot",   "can't",    "won't",     "doesn't",
    "don't",  "didn't",  "isn't",  "aren't",   "wasn't",   "couldn't",  "shouldn't",
    "wouldn't", "n't",   "nothing", "none",    "neither",  "nor",       "unable"};

bool is_negation_marker(std::string_view word) {
  if (std::find(kNegationMarkers.begin(), kNegationMarkers.end(), word) != kNegationMarkers.end()) {
    return true;
  }
  // U+2019 RIGHT SINGLE QUOTATION MARK is common in pasted text.
  return word.ends_with("n't") || word.ends_with("n\xE2\x80\x99t");
}

}  // namespace

std::string_view to_string(QueryCategory category) noexcept {
  return category == QueryCategory::Factual ? "factual" : "troubleshooting";
}

std::optional<QueryCategory> parse_category(std::string_view name) noexcept {
  if (name == "factual") return QueryCategory::Factual;
  if (name == "troubleshooting") return QueryCategory::Troubleshooting;
  return std::nullopt;
}

NegativeLexicon::NegativeLexicon(std::set<std::string> words) : words_(std::move(words)) {
  if (words_.empty()) throw InvariantError(0, "negative lexicon is empty");
  for (const auto& w : words_) {
    const bool bad = w.empty() || std::any_of(w.begin(), w.end(), [](char c) {
                       return (c >= 'A' && c <= 'Z') || c == ' ' || c == '\t' || c == '\n' || c == '\r';
                     });
    if (bad) throw InvariantError(0, "negative lexicon entry '" + w + "' is not a lowercase word");
  }
}

const NegativeLexicon& NegativeLexicon::bundled() {
  static const NegativeLexicon instance = parse_negative_lexicon(bundled::kNegativeWords);
  return instance;
}

NegativeLexicon parse_negative_lexicon(std::string_view content) {
  std::set<std::string> words;
  detail::for_each_line(content, [&](std::size_t, std::string_view line) {
    if (detail::is_comment_or_blank(line)) return;
    words.emplace(trim(line));
  });
  return NegativeLexicon(std::move(words));
}

NegativeLexicon load_negative_lexicon(const std::filesystem::path& path) {
  return parse_negative_lexicon(detail::read_file(path));
}

bool detect_negation(std::span<const Token> tokens) {
  return std::any_of(tokens.begin(), tokens.end(),
                     [](const Token& t) { return is_negation_marker(t.normalized); });
}

bool contains_negative_word(std::span<const Token> tokens, const NegativeLexicon& lexicon) {
  return std::any_of(tokens.begin(), tokens.end(),
                     [&](const Token& t) { return lexicon.contains(t.normalized); });
}

QueryCategory classify(std::span<const Token> tokens, const NegativeLexicon& lexicon) {
  if (detect_negation(tokens) || contains_negative_word(tokens, lexicon)) {
    return QueryCategory::Troubleshooting;
  }
  return QueryCategory::Factual;
}

}  // namespace tuxqa
