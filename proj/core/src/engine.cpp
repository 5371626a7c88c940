#include "tuxqa/engine.hpp"

#include <algorithm>
#include <chrono>

#include "tuxqa/errors.hpp"

namespace tuxqa {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool ranks_before(const Candidate& a, const Candidate& b) {
  if (a.score.fused != b.score.fused) return a.score.fused > b.score.fused;
  if (a.tfidf_score != b.tfidf_score) return a.tfidf_score > b.tfidf_score;
  return a.question_id < b.question_id;
}

}  // namespace

EngineResources EngineResources::bundled() {
  return {Analyzer::bundled(), NegativeLexicon::bundled()};
}

std::vector<std::pair<std::string, double>> StageTimings::as_pairs() const {
  return {{"analyze", analyze_ms}, {"retrieve", retrieve_ms}, {"classify", classify_ms},
          {"semantic", semantic_ms}, {"rank", rank_ms},       {"select", select_ms},
          {"total", total_ms}};
}

std::vector<Candidate> filter_by_category(std::vector<Candidate> candidates,
                                          QueryCategory query_category) {
  std::vector<Candidate> kept;
  for (const auto& c : candidates) {
    if (c.category == query_category) kept.push_back(c);
  }
  if (kept.empty()) return candidates;
  return kept;
}

std::vector<Candidate> rank(std::vector<Candidate> candidates) {
  std::stable_sort(candidates.begin(), candidates.end(), ranks_before);
  return candidates;
}

std::vector<Token> first_sentence_tokens(const Analyzer& analyzer, std::string_view text) {
  auto tokens = analyzer.analyze(first_sentence(text));
  if (tokens.empty()) tokens = analyzer.analyze(text);
  return tokens;
}

Engine::Engine(Corpus corpus, TagCatalog catalog, EngineResources resources,
               std::optional<TfIdfIndex> index)
    : corpus_(std::move(corpus)),
      catalog_(std::move(catalog)),
      resources_(std::move(resources)),
      index_(std::move(index)) {
  if (!index_) return;
  if (index_->n_docs() != corpus_.question_count()) {
    throw InvariantError(0, "index covers " + std::to_string(index_->n_docs()) + " questions, corpus has " +
                                std::to_string(corpus_.question_count()));
  }
  for (auto id : index_->doc_ids()) {
    const auto* post = corpus_.find(id);
    if (!post || !post->is_question()) throw InvariantError(id, "indexed id is not a question of the corpus");
  }
}

Engine Engine::build(Corpus corpus, TagCatalog catalog, EngineResources resources,
                     const FieldWeights& weights) {
  auto index = build_index(corpus, resources.analyzer, weights);
  return Engine(std::move(corpus), std::move(catalog), std::move(resources), std::move(index));
}

const TfIdfIndex& Engine::index() const {
  if (!index_) throw IndexNotBuilt();
  return *index_;
}

std::size_t Engine::root_of(std::span<const Token> tokens) const {
  if (root_finder_) return root_finder_->find_root(tokens);
  return HeuristicRootFinder(catalog_).find_root(tokens);
}

WordVector Engine::sentence_vector(std::string_view text) const {
  const auto tokens = first_sentence_tokens(resources_.analyzer, text);
  if (tokens.empty()) return {};
  return build_word_vector(tokens, root_of(tokens), catalog_);
}

QueryCategory Engine::classify_text(std::string_view text) const {
  const auto tokens = resources_.analyzer.analyze(text);
  return classify(tokens, resources_.negative_words);
}

std::vector<ScoredDoc> Engine::retrieve(std::string_view text, const QueryOptions& options) const {
  if (trim(text).empty()) throw EmptyQuery();
  const auto& idx = index();
  const auto keywords = resources_.analyzer.keywords(text);
  const auto scored = options.weights ? idx.score(keywords, *options.weights) : idx.score(keywords);
  return top_k(scored, options.k);
}

QueryResult Engine::answer_query(std::string_view text, const QueryOptions& options) const {
  const auto start = Clock::now();
  if (trim(text).empty()) throw EmptyQuery();
  const auto& idx = index();

  QueryResult result;
  auto stage = Clock::now();
  const auto tokens = resources_.analyzer.analyze(text);
  result.keywords = resources_.analyzer.keywords(tokens);
  result.timings.analyze_ms = ms_since(stage);

  stage = Clock::now();
  const auto scored = options.weights ? idx.score(result.keywords, *options.weights) : idx.score(result.keywords);
  result.retrieved = top_k(scored, options.k);
  result.timings.retrieve_ms = ms_since(stage);

  stage = Clock::now();
  result.query_category = classify(tokens, resources_.negative_words);
  std::vector<Candidate> candidates;
  candidates.reserve(result.retrieved.size());
  for (const auto& doc : result.retrieved) {
    Candidate c;
    c.question_id = doc.question_id;
    c.tfidf_score = doc.tfidf_score;
    c.category = classify_text(corpus_.question(doc.question_id).title);
    candidates.push_back(std::move(c));
  }
  candidates = filter_by_category(std::move(candidates), result.query_category);
  result.timings.classify_ms = ms_since(stage);

  stage = Clock::now();
  result.query_vector = sentence_vector(text);
  for (auto& c : candidates) {
    c.word_vector = sentence_vector(corpus_.question(c.question_id).title);
    c.score = fuse(cosine(result.query_vector, c.word_vector), c.tfidf_score);
  }
  result.timings.semantic_ms = ms_since(stage);

  stage = Clock::now();
  result.candidates = rank(std::move(candidates));
  result.timings.rank_ms = ms_since(stage);

  stage = Clock::now();
  for (const auto& c : result.candidates) {
    if (const auto* answer = answer_of(corpus_, c.question_id)) {
      result.selected = Selection{c.question_id, answer->id};
      break;
    }
    ++result.fallback_steps;
  }
  result.timings.select_ms = ms_since(stage);
  result.timings.total_ms = ms_since(start);
  return result;
}

}  // namespace tuxqa
