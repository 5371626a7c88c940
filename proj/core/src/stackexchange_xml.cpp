// Reader for Stack Exchange data dump Posts.xml files.
//
// The dump is a flat document: <posts> containing one self-closing <row>
// element per post, with every field stored as an attribute. Only that
// shape is supported; anything else inside the root is skipped.

#include <algorithm>
#include <charconv>

#include "io_util.hpp"
#include "tuxqa/corpus.hpp"
#include "tuxqa/errors.hpp"
#include "tuxqa/text.hpp"

namespace tuxqa {

namespace {

bool is_xml_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-' || c == ':' || c == '.';
}

struct Attribute {
  std::string_view name;
  std::string value;  // entity-decoded
};

class Scanner {
public:
  explicit Scanner(std::string_view doc) : doc_(doc) {}

  bool at_end() const { return pos_ >= doc_.size(); }
  std::size_t line() const { return line_; }

  // Moves to the next '<'. Returns false at end of input.
  bool next_markup() {
    while (pos_ < doc_.size() && doc_[pos_] != '<') advance();
    return pos_ < doc_.size();
  }

  // Skips a construct that ends with `terminator`.
  void skip_past(std::string_view terminator, const char* what) {
    const auto end = doc_.find(terminator, pos_);
    if (end == std::string_view::npos) throw ParseError(line_, std::string("unterminated ") + what);
    while (pos_ < end + terminator.size()) advance();
  }

  bool starts_with(std::string_view s) const { return doc_.substr(pos_).starts_with(s); }

  std::string_view read_name() {
    const auto start = pos_;
    while (pos_ < doc_.size() && is_name_char(doc_[pos_])) advance();
    return doc_.substr(start, pos_ - start);
  }

  void skip_space() {
    while (pos_ < doc_.size() && is_xml_space(doc_[pos_])) advance();
  }

  char peek() const { return pos_ < doc_.size() ? doc_[pos_] : '\0'; }

  void advance() {
    if (doc_[pos_] == '\n') ++line_;
    ++pos_;
  }

  // After the element name: reads attributes up to '>' or '/>'.
  // Returns true when the element is self-closing.
  bool read_attributes(std::vector<Attribute>& attrs) {
    attrs.clear();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '\0') throw ParseError(line_, "unterminated element");
      if (c == '>') {
        advance();
        return false;
      }
      if (c == '/') {
        advance();
        if (peek() != '>') throw ParseError(line_, "expected '>' after '/'");
        advance();
        return true;
      }
      const auto name = read_name();
      if (name.empty()) throw ParseError(line_, std::string("unexpected character '") + c + "' in element");
      skip_space();
      if (peek() != '=') throw ParseError(line_, "expected '=' after attribute " + std::string(name));
      advance();
      skip_space();
      const char quote = peek();
      if (quote != '"' && quote != '\'') throw ParseError(line_, "attribute value must be quoted");
      advance();
      const auto start = pos_;
      while (pos_ < doc_.size() && doc_[pos_] != quote) advance();
      if (pos_ >= doc_.size()) throw ParseError(line_, "unterminated attribute value");
      const auto raw = doc_.substr(start, pos_ - start);
      advance();
      attrs.push_back({name, decode_entities(raw)});
    }
  }

private:
  std::string_view doc_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

const std::string* find_attr(const std::vector<Attribute>& attrs, std::string_view name) {
  auto it = std::find_if(attrs.begin(), attrs.end(), [&](const Attribute& a) { return a.name == name; });
  return it == attrs.end() ? nullptr : &it->value;
}

template <typename Int>
Int parse_int(std::string_view text, std::size_t line, std::string_view field) {
  Int value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line, std::string(field) + " is not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::optional<PostId> optional_id(const std::vector<Attribute>& attrs, std::string_view name,
                                  std::size_t line) {
  const auto* v = find_attr(attrs, name);
  if (!v || v->empty()) return std::nullopt;
  const auto id = parse_int<PostId>(*v, line, name);
  if (id == 0) throw ParseError(line, std::string(name) + " must be positive");
  return id;
}

}  // namespace

std::vector<std::string> split_tag_attribute(std::string_view tags) {
  std::vector<std::string> out;
  auto push = [&](std::string_view tag) {
    tag = trim(tag);
    if (!tag.empty()) out.push_back(to_lower(tag));
  };
  if (!tags.empty() && tags.front() == '|') {
    std::size_t start = 0;
    while (start < tags.size()) {
      const auto bar = tags.find('|', start);
      push(tags.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    return out;
  }
  std::size_t i = 0;
  while ((i = tags.find('<', i)) != std::string_view::npos) {
    const auto close = tags.find('>', i + 1);
    if (close == std::string_view::npos) break;
    push(tags.substr(i + 1, close - i - 1));
    i = close + 1;
  }
  return out;
}

Corpus parse_stackexchange_xml(std::string_view content) {
  Scanner scan(content);
  std::vector<Post> posts;
  std::vector<std::size_t> lines;
  std::vector<Attribute> attrs;
  bool saw_root = false;

  while (scan.next_markup()) {
    if (scan.starts_with("<?")) {
      scan.skip_past("?>", "processing instruction");
      continue;
    }
    if (scan.starts_with("<!--")) {
      scan.skip_past("-->", "comment");
      continue;
    }
    if (scan.starts_with("<!")) {
      scan.skip_past(">", "declaration");
      continue;
    }
    if (scan.starts_with("</")) {
      scan.skip_past(">", "end tag");
      continue;
    }
    scan.advance();  // '<'
    const auto line = scan.line();
    const auto name = scan.read_name();
    if (name.empty()) throw ParseError(line, "malformed element");
    scan.read_attributes(attrs);
    if (name != "row") {
      saw_root = true;
      continue;
    }
    if (!saw_root) throw ParseError(line, "row element outside of a root element");

    const auto* type = find_attr(attrs, "PostTypeId");
    if (!type) throw ParseError(line, "row without PostTypeId");
    const auto type_id = parse_int<int>(*type, line, "PostTypeId");
    if (type_id != 1 && type_id != 2) continue;

    const auto* id = find_attr(attrs, "Id");
    if (!id) throw ParseError(line, "row without Id");

    Post post;
    post.id = parse_int<PostId>(*id, line, "Id");
    post.kind = type_id == 1 ? PostKind::Question : PostKind::Answer;
    if (const auto* title = find_attr(attrs, "Title")) post.title = *title;
    if (const auto* body = find_attr(attrs, "Body")) post.body = *body;
    if (const auto* tags = find_attr(attrs, "Tags")) post.tags = split_tag_attribute(*tags);
    post.accepted_answer_id = optional_id(attrs, "AcceptedAnswerId", line);
    post.parent_id = optional_id(attrs, "ParentId", line);
    if (const auto* score = find_attr(attrs, "Score"); score && !score->empty()) {
      post.score = parse_int<std::int64_t>(*score, line, "Score");
    }
    posts.push_back(std::move(post));
    lines.push_back(line);
  }
  if (!saw_root) throw ParseError(0, "document has no root element");
  return Corpus::from_posts(std::move(posts), lines);
}

Corpus load_stackexchange_xml(const std::filesystem::path& path) {
  return parse_stackexchange_xml(detail::read_file(path));
}

}  // namespace tuxqa
