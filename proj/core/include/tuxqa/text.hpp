#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tuxqa {

enum class Pos {
  Noun,
  Verb,
  Adjective,
  Adverb,
  Pronoun,
  Determiner,
  Preposition,
  Conjunction,
  Number,
  Other,
};

std::string_view to_string(Pos pos) noexcept;
std::optional<Pos> parse_pos(std::string_view name) noexcept;

struct Token {
  std::string surface;     // raw whitespace-delimited chunk
  std::string normalized;  // lowercased, surrounding punctuation stripped
  Pos pos = Pos::Other;
  std::size_t index = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

using PosLexicon = std::unordered_map<std::string, Pos>;
using StopwordSet = std::unordered_set<std::string>;

// ASCII case folding; bytes outside ASCII are copied unchanged.
std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s) noexcept;

/// Decodes named (&amp; &lt; &gt; &quot; &apos; &nbsp;) and numeric
/// (&#39; &#x27;) character references. Unknown entities are kept verbatim.
std::string decode_entities(std::string_view s);

/// Plain text of an HTML body for indexing: tags removed, <code> and <pre>
/// contents dropped, entities decoded, whitespace collapsed.
std::string strip_markup(std::string_view body);

/// Like strip_markup but keeps the text inside <code>/<pre>. Used to decide
/// whether an answer body says anything at all.
std::string visible_text(std::string_view body);

/// Text up to and including the first '.', '?' or '!' that is followed by
/// whitespace or the end of input. "12.04" does not end a sentence.
std::string_view first_sentence(std::string_view text) noexcept;

/// Whitespace split; leading/trailing ASCII punctuation stripped per chunk
/// (a leading '/' directly before a word character is kept, so paths survive).
/// Tokens come back with pos = Other.
std::vector<Token> tokenize(std::string_view text);

/// Lexicon lookup, then suffix rules, then Noun.
Pos tag_word(std::string_view normalized, const PosLexicon& lexicon);
std::vector<Token> pos_tag(std::vector<Token> tokens, const PosLexicon& lexicon);

/// Keeps content words (Noun, Verb, Adjective, Number) that are not stopwords.
/// Order and duplicates are preserved.
std::vector<std::string> extract_keywords(std::span<const Token> tokens,
                                          const StopwordSet& stopwords);

// "word,pos" lines; '#' comments and blank lines ignored.
PosLexicon parse_pos_lexicon(std::string_view content);
PosLexicon load_pos_lexicon(const std::filesystem::path& path);

// One word per line; '#' comments and blank lines ignored; lowercased.
StopwordSet parse_word_list(std::string_view content);
StopwordSet load_stopwords(const std::filesystem::path& path);

/// Tokenizer + tagger + keyword filter with their word lists.
class Analyzer {
public:
  Analyzer(PosLexicon lexicon, StopwordSet stopwords);

  /// The word lists shipped with the library.
  static const Analyzer& bundled();

  std::vector<Token> analyze(std::string_view text) const;
  std::vector<std::string> keywords(std::string_view text) const;
  std::vector<std::string> keywords(std::span<const Token> tokens) const;

  const PosLexicon& lexicon() const noexcept { return lexicon_; }
  const StopwordSet& stopwords() const noexcept { return stopwords_; }

private:
  PosLexicon lexicon_;
  StopwordSet stopwords_;
};

}  // namespace tuxqa
