#include "tuxqa/corpus.hpp"

#include <algorithm>
#include <json.hpp>

#include "io_util.hpp"
#include "tuxqa/errors.hpp"
#include "tuxqa/text.hpp"

namespace tuxqa {

using nlohmann::json;

namespace {

std::optional<std::size_t> line_of(std::span<const std::size_t> lines, std::size_t i) {
  if (i < lines.size()) return lines[i];
  return std::nullopt;
}

PostId read_id(const json& value, std::size_t line_no, const char* field) {
  if (value.is_number_unsigned()) {
    const auto id = value.get<std::uint64_t>();
    if (id > 0) return id;
  } else if (value.is_number_integer() && value.get<std::int64_t>() > 0) {
    return static_cast<PostId>(value.get<std::int64_t>());
  }
  throw ParseError(line_no, std::string("'") + field + "' must be a positive integer");
}

std::optional<PostId> read_optional_id(const json& obj, std::size_t line_no, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return read_id(*it, line_no, field);
}

std::string read_string(const json& obj, std::size_t line_no, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw ParseError(line_no, std::string("'") + field + "' must be a string");
  return it->get<std::string>();
}

Post post_from_json(const json& obj, std::size_t line_no) {
  if (!obj.is_object()) throw ParseError(line_no, "expected a JSON object");
  Post post;
  auto id = obj.find("id");
  if (id == obj.end()) throw ParseError(line_no, "missing 'id'");
  post.id = read_id(*id, line_no, "id");

  const auto kind = read_string(obj, line_no, "kind");
  if (kind == "question") {
    post.kind = PostKind::Question;
  } else if (kind == "answer") {
    post.kind = PostKind::Answer;
  } else {
    throw ParseError(line_no, "'kind' must be \"question\" or \"answer\"");
  }
  post.title = read_string(obj, line_no, "title");
  post.body = read_string(obj, line_no, "body");

  if (auto tags = obj.find("tags"); tags != obj.end() && !tags->is_null()) {
    if (!tags->is_array()) throw ParseError(line_no, "'tags' must be an array");
    for (const auto& tag : *tags) {
      if (!tag.is_string()) throw ParseError(line_no, "'tags' entries must be strings");
      post.tags.push_back(tag.get<std::string>());
    }
  }
  post.accepted_answer_id = read_optional_id(obj, line_no, "accepted_answer_id");
  post.parent_id = read_optional_id(obj, line_no, "parent_id");

  if (auto score = obj.find("score"); score != obj.end() && !score->is_null()) {
    if (!score->is_number_integer()) throw ParseError(line_no, "'score' must be an integer");
    post.score = score->get<std::int64_t>();
  }
  return post;
}

}  // namespace

Corpus Corpus::from_posts(std::vector<Post> posts, std::span<const std::size_t> lines) {
  Corpus corpus;
  corpus.by_id_.reserve(posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) {
    auto& post = posts[i];
    const auto line = line_of(lines, i);
    if (post.id == 0) throw InvariantError(post.id, "id must be positive", line);
    if (!corpus.by_id_.emplace(post.id, i).second) {
      throw InvariantError(post.id, "duplicate id", line);
    }
    for (auto& tag : post.tags) tag = to_lower(trim(tag));
    std::erase_if(post.tags, [](const std::string& t) { return t.empty(); });

    if (post.is_question()) {
      if (post.parent_id) throw InvariantError(post.id, "question has a parent_id", line);
      corpus.question_ids_.push_back(post.id);
    } else {
      if (!post.parent_id) throw InvariantError(post.id, "answer has no parent_id", line);
      if (!post.title.empty()) throw InvariantError(post.id, "answer has a title", line);
      if (!post.tags.empty()) throw InvariantError(post.id, "answer has tags", line);
      if (post.accepted_answer_id) {
        throw InvariantError(post.id, "answer has an accepted_answer_id", line);
      }
    }
  }

  for (std::size_t i = 0; i < posts.size(); ++i) {
    const auto& post = posts[i];
    if (post.parent_id) {
      auto parent = corpus.by_id_.find(*post.parent_id);
      if (parent == corpus.by_id_.end() || !posts[parent->second].is_question()) {
        throw InvariantError(post.id, "parent_id " + std::to_string(*post.parent_id) + " is not a question",
                             line_of(lines, i));
      }
    }
    if (!post.accepted_answer_id) continue;
    const auto line = line_of(lines, i);
    auto it = corpus.by_id_.find(*post.accepted_answer_id);
    if (it == corpus.by_id_.end()) {
      throw InvariantError(post.id, "dangling accepted_answer_id " + std::to_string(*post.accepted_answer_id), line);
    }
    const auto& answer = posts[it->second];
    if (answer.is_question()) {
      throw InvariantError(post.id, "accepted_answer_id refers to a question", line);
    }
    if (answer.parent_id != post.id) {
      throw InvariantError(post.id, "accepted answer belongs to another question", line);
    }
  }

  corpus.posts_ = std::move(posts);
  return corpus;
}

const Post* Corpus::find(PostId id) const noexcept {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &posts_[it->second];
}

const Post& Corpus::at(PostId id) const {
  const auto* post = find(id);
  if (!post) throw UnknownQuestion(id);
  return *post;
}

const Post& Corpus::question(PostId id) const {
  const auto* post = find(id);
  if (!post || !post->is_question()) throw UnknownQuestion(id);
  return *post;
}

Corpus parse_jsonl(std::string_view content) {
  std::vector<Post> posts;
  std::vector<std::size_t> lines;
  detail::for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    if (trim(line).empty()) return;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, e.what());
    }
    posts.push_back(post_from_json(obj, line_no));
    lines.push_back(line_no);
  });
  return Corpus::from_posts(std::move(posts), lines);
}

Corpus load_jsonl(const std::filesystem::path& path) {
  return parse_jsonl(detail::read_file(path));
}

std::string to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& post : corpus.posts()) {
    nlohmann::ordered_json obj;
    obj["id"] = post.id;
    obj["kind"] = post.is_question() ? "question" : "answer";
    obj["title"] = post.title;
    obj["body"] = post.body;
    obj["tags"] = post.tags;
    if (post.accepted_answer_id) obj["accepted_answer_id"] = *post.accepted_answer_id;
    if (post.parent_id) obj["parent_id"] = *post.parent_id;
    obj["score"] = post.score;
    out += obj.dump(-1, ' ', false, json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

void save_jsonl(const Corpus& corpus, const std::filesystem::path& path) {
  detail::write_file(path, to_jsonl(corpus));
}

const Post* answer_of(const Corpus& corpus, PostId question_id) {
  const auto& question = corpus.question(question_id);
  if (!question.accepted_answer_id) return nullptr;
  const auto* answer = corpus.find(*question.accepted_answer_id);
  if (!answer || visible_text(answer->body).empty()) return nullptr;
  return answer;
}

TagCatalog::TagCatalog(std::set<std::string> canonical_tags,
                       std::map<std::string, std::string> synonyms) {
  for (const auto& tag : canonical_tags) {
    auto key = to_lower(trim(tag));
    if (!key.empty()) canonical_.insert(std::move(key));
  }
  for (const auto& [alias, target] : synonyms) {
    auto a = to_lower(trim(alias));
    auto t = to_lower(trim(target));
    if (!canonical_.contains(t)) {
      throw InvariantError(0, "synonym target '" + t + "' of '" + a + "' is not a known tag");
    }
    if (canonical_.contains(a)) {
      throw InvariantError(0, "alias '" + a + "' is also a canonical tag");
    }
    auto [it, inserted] = synonyms_.emplace(a, t);
    if (!inserted && it->second != t) {
      throw InvariantError(0, "alias '" + a + "' maps to both '" + it->second + "' and '" + t + "'");
    }
  }
}

std::optional<std::string> TagCatalog::canonical_tag(std::string_view token) const {
  auto key = to_lower(token);
  if (canonical_.contains(key)) return key;
  if (auto it = synonyms_.find(key); it != synonyms_.end()) return it->second;
  return std::nullopt;
}

bool TagCatalog::is_canonical(std::string_view token) const {
  return canonical_.contains(to_lower(token));
}

TagCatalog parse_tag_catalog(std::string_view tags_content, std::string_view synonyms_content) {
  std::set<std::string> tags;
  detail::for_each_line(tags_content, [&](std::size_t, std::string_view line) {
    if (detail::is_comment_or_blank(line)) return;
    tags.insert(to_lower(trim(line)));
  });

  // Validated entry by entry so conflicting duplicates surface with a line.
  std::map<std::string, std::string> synonyms;
  detail::for_each_line(synonyms_content, [&](std::size_t line_no, std::string_view line) {
    if (detail::is_comment_or_blank(line)) return;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw ParseError(line_no, "expected alias,canonical");
    auto alias = to_lower(trim(line.substr(0, comma)));
    auto target = to_lower(trim(line.substr(comma + 1)));
    if (alias.empty() || target.empty()) throw ParseError(line_no, "empty alias or canonical tag");
    auto [it, inserted] = synonyms.emplace(alias, target);
    if (!inserted && it->second != target) {
      throw InvariantError(0, "alias '" + alias + "' maps to both '" + it->second + "' and '" + target + "'", line_no);
    }
  });
  return TagCatalog(std::move(tags), std::move(synonyms));
}

TagCatalog load_tag_catalog(const std::filesystem::path& tags_path,
                            const std::filesystem::path& synonyms_path) {
  return parse_tag_catalog(detail::read_file(tags_path), detail::read_file(synonyms_path));
}

std::vector<DuplicatePair> parse_duplicates(std::string_view content, const Corpus& corpus) {
  std::vector<DuplicatePair> pairs;
  detail::for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    if (detail::is_comment_or_blank(line)) return;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw ParseError(line_no, "expected duplicate_id,original_id");
    DuplicatePair pair;
    try {
      pair.duplicate_question_id = std::stoull(std::string(trim(line.substr(0, comma))));
      pair.original_question_id = std::stoull(std::string(trim(line.substr(comma + 1))));
    } catch (const std::exception&) {
      throw ParseError(line_no, "ids must be positive integers");
    }
    for (auto id : {pair.duplicate_question_id, pair.original_question_id}) {
      const auto* post = corpus.find(id);
      if (!post || !post->is_question()) {
        throw InvariantError(id, "duplicate pair refers to a missing question", line_no);
      }
    }
    if (pair.duplicate_question_id == pair.original_question_id) {
      throw InvariantError(pair.duplicate_question_id, "question marked as its own duplicate", line_no);
    }
    pairs.push_back(pair);
  });
  return pairs;
}

std::vector<DuplicatePair> load_duplicates(const std::filesystem::path& path, const Corpus& corpus) {
  return parse_duplicates(detail::read_file(path), corpus);
}

}  // namespace tuxqa
