#include "tuxqa/text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <utility>

#include "io_util.hpp"
#include "resources.hpp"
#include "tuxqa/errors.hpp"

namespace tuxqa {

namespace {

constexpr std::array<std::pair<Pos, std::string_view>, 10> kPosNames{{
    {Pos::Noun, "noun"},
    {Pos::Verb, "verb"},
    {Pos::Adjective, "adjective"},
    {Pos::Adverb, "adverb"},
    {Pos::Pronoun, "pronoun"},
    {Pos::Determiner, "determiner"},
    {Pos::Preposition, "preposition"},
    {Pos::Conjunction, "conjunction"},
    {Pos::Number, "number"},
    {Pos::Other, "other"},
}};

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Letters, digits and any non-ASCII byte count as word characters.
bool is_word_char(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto la = static_cast<unsigned char>(a[i]);
    auto lb = static_cast<unsigned char>(b[i]);
    if (la >= 'A' && la <= 'Z') la += 'a' - 'A';
    if (lb >= 'A' && lb <= 'Z') lb += 'a' - 'A';
    if (la != lb) return false;
  }
  return true;
}

std::size_t ifind(std::string_view hay, std::string_view needle, std::size_t from) {
  if (needle.size() > hay.size()) return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    if (iequals(hay.substr(i, needle.size()), needle)) return i;
  }
  return std::string_view::npos;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::optional<std::uint32_t> parse_char_ref(std::string_view ref) {
  // ref is the part between "&#" and ";"
  if (ref.empty()) return std::nullopt;
  int base = 10;
  if (ref.front() == 'x' || ref.front() == 'X') {
    base = 16;
    ref.remove_prefix(1);
  }
  if (ref.empty() || ref.size() > 8) return std::nullopt;
  std::uint32_t value = 0;
  for (char ch : ref) {
    const auto c = static_cast<unsigned char>(ch);
    std::uint32_t digit;
    if (is_digit(c)) {
      digit = c - '0';
    } else if (base == 16 && c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else if (base == 16 && c >= 'A' && c <= 'F') {
      digit = c - 'A' + 10;
    } else {
      return std::nullopt;
    }
    value = value * static_cast<std::uint32_t>(base) + digit;
  }
  if (value == 0 || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) return std::nullopt;
  return value;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char ch : s) {
    if (is_space(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += ch;
  }
  return out;
}

// Inline elements do not break words: "<code>grub</code>," renders as "grub,".
bool is_inline_tag(std::string_view name) {
  static constexpr std::array<std::string_view, 14> kInline{"a",   "b",   "i",      "u",   "s",   "em",  "strong",
                                                            "code", "kbd", "span", "sub", "sup", "strike", "tt"};
  return std::any_of(kInline.begin(), kInline.end(), [&](std::string_view t) { return iequals(name, t); });
}

std::string remove_tags(std::string_view body, bool drop_code) {
  std::string out;
  out.reserve(body.size());
  std::size_t i = 0;
  while (i < body.size()) {
    const char ch = body[i];
    if (ch != '<' || i + 1 >= body.size()) {
      out += ch;
      ++i;
      continue;
    }
    const auto next = static_cast<unsigned char>(body[i + 1]);
    const bool looks_like_tag = next == '/' || next == '!' || next == '?' ||
                                ((next >= 'a' && next <= 'z') || (next >= 'A' && next <= 'Z'));
    if (!looks_like_tag) {
      out += ch;
      ++i;
      continue;
    }
    if (body.substr(i, 4) == "<!--") {
      const auto end = body.find("-->", i + 4);
      i = end == std::string_view::npos ? body.size() : end + 3;
      out += ' ';
      continue;
    }
    const auto close = body.find('>', i + 1);
    if (close == std::string_view::npos) {
      // Unterminated tag: treat the rest as text.
      out.append(body.substr(i));
      break;
    }
    const auto inner = body.substr(i + 1, close - i - 1);
    const bool closing = !inner.empty() && inner.front() == '/';
    auto name = closing ? inner.substr(1) : inner;
    const auto name_end = std::find_if(name.begin(), name.end(), [](char c) {
      return is_space(static_cast<unsigned char>(c)) || c == '/' || c == '>';
    });
    name = name.substr(0, static_cast<std::size_t>(name_end - name.begin()));
    const bool self_closing = !inner.empty() && inner.back() == '/';
    i = close + 1;
    if (!is_inline_tag(name)) out += ' ';

    if (drop_code && !closing && !self_closing && (iequals(name, "code") || iequals(name, "pre"))) {
      out += ' ';
      const std::string end_tag = iequals(name, "pre") ? "</pre" : "</code";
      const auto end = ifind(body, end_tag, i);
      if (end == std::string_view::npos) {
        i = body.size();
      } else {
        const auto gt = body.find('>', end);
        i = gt == std::string_view::npos ? body.size() : gt + 1;
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Pos pos) noexcept {
  for (const auto& [p, name] : kPosNames) {
    if (p == pos) return name;
  }
  return "other";
}

std::optional<Pos> parse_pos(std::string_view name) noexcept {
  for (const auto& [p, n] : kPosNames) {
    if (iequals(n, name)) return p;
  }
  return std::nullopt;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out += s[i++];
      continue;
    }
    const auto semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out += s[i++];
      continue;
    }
    const auto name = s.substr(i + 1, semi - i - 1);
    bool decoded = true;
    if (name == "amp") {
      out += '&';
    } else if (name == "lt") {
      out += '<';
    } else if (name == "gt") {
      out += '>';
    } else if (name == "quot") {
      out += '"';
    } else if (name == "apos") {
      out += '\'';
    } else if (name == "nbsp") {
      out += ' ';
    } else if (!name.empty() && name.front() == '#') {
      if (auto cp = parse_char_ref(name.substr(1))) {
        append_utf8(out, *cp);
      } else {
        decoded = false;
      }
    } else {
      decoded = false;
    }
    if (decoded) {
      i = semi + 1;
    } else {
      out += s[i++];
    }
  }
  return out;
}

std::string strip_markup(std::string_view body) {
  return collapse_whitespace(decode_entities(remove_tags(body, true)));
}

std::string visible_text(std::string_view body) {
  return collapse_whitespace(decode_entities(remove_tags(body, false)));
}

std::string_view first_sentence(std::string_view text) noexcept {
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch != '.' && ch != '?' && ch != '!') continue;
    if (i + 1 == text.size() || is_space(static_cast<unsigned char>(text[i + 1]))) {
      return text.substr(0, i + 1);
    }
  }
  return text;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    const auto start = i;
    while (i < text.size() && !is_space(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;
    const auto chunk = text.substr(start, i - start);

    std::size_t begin = 0;
    while (begin < chunk.size() && !is_word_char(static_cast<unsigned char>(chunk[begin]))) ++begin;
    if (begin == chunk.size()) continue;
    std::size_t end = chunk.size();
    while (!is_word_char(static_cast<unsigned char>(chunk[end - 1]))) --end;
    if (begin > 0 && chunk[begin - 1] == '/') --begin;

    Token tok;
    tok.surface = std::string(chunk);
    tok.normalized = to_lower(chunk.substr(begin, end - begin));
    tok.index = tokens.size();
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

Pos tag_word(std::string_view word, const PosLexicon& lexicon) {
  if (auto it = lexicon.find(std::string(word)); it != lexicon.end()) return it->second;

  const bool has_digit = std::any_of(word.begin(), word.end(),
                                     [](char c) { return is_digit(static_cast<unsigned char>(c)); });
  const bool numeric = std::all_of(word.begin(), word.end(), [](char c) {
    return is_digit(static_cast<unsigned char>(c)) || c == '.';
  });
  if (has_digit && numeric) return Pos::Number;

  // Suffix rules need a stem of at least two characters.
  const auto has_suffix = [&](std::string_view suffix) {
    return word.size() >= suffix.size() + 2 && word.ends_with(suffix);
  };
  if (has_suffix("ing") || has_suffix("ed")) return Pos::Verb;
  if (has_suffix("ly")) return Pos::Adverb;
  if (has_suffix("tion") || has_suffix("ness")) return Pos::Noun;
  return Pos::Noun;
}

std::vector<Token> pos_tag(std::vector<Token> tokens, const PosLexicon& lexicon) {
  for (auto& tok : tokens) tok.pos = tag_word(tok.normalized, lexicon);
  return tokens;
}

std::vector<std::string> extract_keywords(std::span<const Token> tokens,
                                          const StopwordSet& stopwords) {
  std::vector<std::string> out;
  for (const auto& tok : tokens) {
    switch (tok.pos) {
      case Pos::Noun:
      case Pos::Verb:
      case Pos::Adjective:
      case Pos::Number:
        if (!stopwords.contains(tok.normalized)) out.push_back(tok.normalized);
        break;
      default:
        break;
    }
  }
  return out;
}

PosLexicon parse_pos_lexicon(std::string_view content) {
  PosLexicon lexicon;
  detail::for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    if (detail::is_comment_or_blank(line)) return;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw ParseError(line_no, "expected word,pos");
    const auto word = to_lower(trim(line.substr(0, comma)));
    const auto pos = parse_pos(trim(line.substr(comma + 1)));
    if (word.empty() || !pos) throw ParseError(line_no, "bad lexicon entry '" + std::string(line) + "'");
    lexicon.try_emplace(word, *pos);
  });
  return lexicon;
}

PosLexicon load_pos_lexicon(const std::filesystem::path& path) {
  return parse_pos_lexicon(detail::read_file(path));
}

StopwordSet parse_word_list(std::string_view content) {
  StopwordSet words;
  detail::for_each_line(content, [&](std::size_t, std::string_view line) {
    if (detail::is_comment_or_blank(line)) return;
    words.insert(to_lower(trim(line)));
  });
  return words;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  return parse_word_list(detail::read_file(path));
}

Analyzer::Analyzer(PosLexicon lexicon, StopwordSet stopwords)
    : lexicon_(std::move(lexicon)), stopwords_(std::move(stopwords)) {}

const Analyzer& Analyzer::bundled() {
  static const Analyzer instance(parse_pos_lexicon(bundled::kPosLexicon),
                                 parse_word_list(bundled::kStopwords));
  return instance;
}

std::vector<Token> Analyzer::analyze(std::string_view text) const {
  return pos_tag(tokenize(text), lexicon_);
}

std::vector<std::string> Analyzer::keywords(std::string_view text) const {
  const auto tokens = analyze(text);
  return extract_keywords(tokens, stopwords_);
}

std::vector<std::string> Analyzer::keywords(std::span<const Token> tokens) const {
  return extract_keywords(tokens, stopwords_);
}

}  // namespace tuxqa
