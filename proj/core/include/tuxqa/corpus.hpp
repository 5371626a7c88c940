#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tuxqa {

using PostId = std::uint64_t;

enum class PostKind { Question, Answer };

struct Post {
  PostId id = 0;
  PostKind kind = PostKind::Question;
  std::string title;              // empty for answers
  std::string body;               // may contain HTML
  std::vector<std::string> tags;  // lowercase; empty for answers
  std::optional<PostId> accepted_answer_id;  // questions only
  std::optional<PostId> parent_id;           // answers only
  std::int64_t score = 0;

  bool is_question() const noexcept { return kind == PostKind::Question; }
  friend bool operator==(const Post&, const Post&) = default;
};

/// Validated, immutable collection of questions and answers.
///
/// Posts keep their input order. Every accepted_answer_id resolves to an
/// answer whose parent is the question; ids are unique and positive.
class Corpus {
public:
  Corpus() = default;

  /// Validates and takes ownership. `lines`, when given, maps each post to
  /// the input line it came from so errors can point at it.
  static Corpus from_posts(std::vector<Post> posts,
                           std::span<const std::size_t> lines = {});

  const Post* find(PostId id) const noexcept;
  const Post& at(PostId id) const;  // throws UnknownQuestion
  const Post& question(PostId id) const;  // throws UnknownQuestion unless id is a question

  std::span<const Post> posts() const noexcept { return posts_; }
  std::span<const PostId> question_ids() const noexcept { return question_ids_; }
  std::size_t size() const noexcept { return posts_.size(); }
  std::size_t question_count() const noexcept { return question_ids_.size(); }
  bool empty() const noexcept { return posts_.empty(); }

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.posts_ == b.posts_; }

private:
  std::vector<Post> posts_;
  std::vector<PostId> question_ids_;
  std::unordered_map<PostId, std::size_t> by_id_;
};

Corpus load_jsonl(const std::filesystem::path& path);
Corpus parse_jsonl(std::string_view content);
std::string to_jsonl(const Corpus& corpus);
void save_jsonl(const Corpus& corpus, const std::filesystem::path& path);

/// Stack Exchange Posts.xml. Rows other than questions (PostTypeId 1) and
/// answers (PostTypeId 2) are skipped.
Corpus load_stackexchange_xml(const std::filesystem::path& path);
Corpus parse_stackexchange_xml(std::string_view content);

/// Splits a Tags attribute value ("<a><b>" or "|a|b|") into lowercase tags.
std::vector<std::string> split_tag_attribute(std::string_view tags);

/// The accepted answer of `question_id`, if it exists and has visible text.
/// Throws UnknownQuestion when the id is not a question.
const Post* answer_of(const Corpus& corpus, PostId question_id);

/// Canonical tag set plus alias map. Lookups are case-insensitive.
class TagCatalog {
public:
  TagCatalog() = default;

  /// Throws InvariantError when a synonym target is not canonical or an
  /// alias is itself canonical. Keys are lowercased.
  TagCatalog(std::set<std::string> canonical_tags, std::map<std::string, std::string> synonyms);

  std::optional<std::string> canonical_tag(std::string_view token) const;
  bool is_canonical(std::string_view token) const;

  const std::set<std::string>& canonical_tags() const noexcept { return canonical_; }
  const std::map<std::string, std::string>& synonyms() const noexcept { return synonyms_; }
  bool empty() const noexcept { return canonical_.empty(); }

  friend bool operator==(const TagCatalog&, const TagCatalog&) = default;

private:
  std::set<std::string> canonical_;
  std::map<std::string, std::string> synonyms_;
};

TagCatalog load_tag_catalog(const std::filesystem::path& tags_path,
                            const std::filesystem::path& synonyms_path);
TagCatalog parse_tag_catalog(std::string_view tags_content, std::string_view synonyms_content);

inline std::optional<std::string> canonical_tag(const TagCatalog& catalog, std::string_view token) {
  return catalog.canonical_tag(token);
}

struct DuplicatePair {
  PostId duplicate_question_id = 0;
  PostId original_question_id = 0;
  friend bool operator==(const DuplicatePair&, const DuplicatePair&) = default;
};

/// "duplicate_id,original_id" lines. Both ids must be questions of `corpus`.
std::vector<DuplicatePair> load_duplicates(const std::filesystem::path& path, const Corpus& corpus);
std::vector<DuplicatePair> parse_duplicates(std::string_view content, const Corpus& corpus);

}  // namespace tuxqa
