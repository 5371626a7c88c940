#include "tuxqa/service.hpp"

#include <json.hpp>

#include "io_util.hpp"
#include "resources.hpp"
#include "tuxqa/errors.hpp"

namespace tuxqa {

using nlohmann::json;

namespace {

json error_body(std::string_view message) { return {{"error", message}}; }

HttpReply reply(int status, const json& body) { return {status, body.dump(-1, ' ', false, json::error_handler_t::replace)}; }

}  // namespace

SalutationTable::SalutationTable(std::map<std::string, std::string> replies) {
  for (auto& [phrase, text] : replies) replies_.emplace(to_lower(trim(phrase)), std::move(text));
}

const SalutationTable& SalutationTable::bundled() {
  static const SalutationTable instance = parse_salutations(bundled::kSalutations);
  return instance;
}

std::optional<std::string> SalutationTable::reply(std::string_view text) const {
  auto it = replies_.find(to_lower(trim(text)));
  if (it == replies_.end()) return std::nullopt;
  return it->second;
}

SalutationTable parse_salutations(std::string_view content) {
  std::map<std::string, std::string> replies;
  detail::for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    if (detail::is_comment_or_blank(line)) return;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw ParseError(line_no, "expected phrase,reply");
    replies.emplace(std::string(trim(line.substr(0, comma))), std::string(trim(line.substr(comma + 1))));
  });
  return SalutationTable(std::move(replies));
}

std::optional<std::string> salutation_reply(std::string_view text) {
  return SalutationTable::bundled().reply(text);
}

std::string_view to_string(ResponseKind kind) noexcept {
  switch (kind) {
    case ResponseKind::Answer: return "answer";
    case ResponseKind::Salutation: return "salutation";
    case ResponseKind::NoResult: return "no_result";
  }
  return "no_result";
}

std::string to_json(const ApiQueryResponse& r) {
  json j;
  j["kind"] = to_string(r.kind);
  j["reply_text"] = r.reply_text;
  j["question"] = r.question ? json{{"id", r.question->id}, {"title", r.question->title}} : json(nullptr);
  j["answer"] = r.answer ? json(*r.answer) : json(nullptr);
  j["category"] = r.category ? json(to_string(*r.category)) : json(nullptr);
  if (r.candidates) {
    json list = json::array();
    for (const auto& c : *r.candidates) {
      list.push_back({{"id", c.id}, {"title", c.title}, {"tfidf", c.tfidf}, {"cosine", c.cosine}, {"fused", c.fused}});
    }
    j["candidates"] = std::move(list);
  }
  json timings = json::object();
  for (const auto& [stage, ms] : r.timings_ms) timings[stage] = ms;
  j["timings_ms"] = std::move(timings);
  if (r.keywords || r.query_vector || r.fallback_steps) {
    json debug = json::object();
    if (r.keywords) debug["keywords"] = *r.keywords;
    if (r.query_vector) debug["query_vector"] = r.query_vector->entries;
    if (r.fallback_steps) debug["fallback_steps"] = *r.fallback_steps;
    j["debug"] = std::move(debug);
  }
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string to_json(const HealthStatus& h) {
  json j{{"status", h.status}, {"n_questions", h.n_questions}};
  j["index_version"] = h.index_version ? json(*h.index_version) : json(nullptr);
  return j.dump();
}

QueryService::QueryService(ServiceOptions options, SalutationTable salutations)
    : options_(std::move(options)), salutations_(std::move(salutations)) {
  if (options_.query_log) {
    log_ = std::make_unique<std::ofstream>(*options_.query_log, std::ios::app);
    if (!*log_) throw IoError(options_.query_log->string(), "cannot open query log");
  }
}

QueryService::~QueryService() = default;

void QueryService::load(std::shared_ptr<const Engine> engine) {
  std::lock_guard lock(mutex_);
  engine_ = std::move(engine);
}

std::shared_ptr<const Engine> QueryService::engine() const {
  std::lock_guard lock(mutex_);
  return engine_;
}

bool QueryService::ready() const {
  const auto e = engine();
  return e && e->has_index();
}

ApiQueryResponse QueryService::handle_query(const QueryRequest& request) const {
  if (trim(request.text).empty()) throw EmptyQuery();

  ApiQueryResponse response;
  if (auto greeting = salutations_.reply(request.text)) {
    response.kind = ResponseKind::Salutation;
    response.reply_text = std::move(*greeting);
    log_query(request, response);
    return response;
  }

  const auto e = engine();
  if (!e) throw IndexNotBuilt();
  QueryOptions opts{request.k.value_or(options_.k), options_.weights};
  const auto result = e->answer_query(request.text, opts);

  response.category = result.query_category;
  response.timings_ms = result.timings.as_pairs();
  if (result.selected) {
    const auto& question = e->corpus().question(result.selected->question_id);
    const auto& answer = e->corpus().at(result.selected->answer_id);
    response.kind = ResponseKind::Answer;
    response.question = QuestionRef{question.id, question.title};
    response.answer = answer.body;
    response.reply_text = visible_text(answer.body);
  } else {
    response.kind = ResponseKind::NoResult;
    response.reply_text = std::string(kNoResultMessage);
  }
  if (request.debug) {
    std::vector<CandidateView> views;
    for (const auto& c : result.candidates) {
      views.push_back({c.question_id, e->corpus().question(c.question_id).title, c.score.tfidf_score,
                       c.score.cosine, c.score.fused});
    }
    response.candidates = std::move(views);
    response.keywords = result.keywords;
    response.query_vector = result.query_vector;
    response.fallback_steps = result.fallback_steps;
  }
  log_query(request, response);
  return response;
}

void QueryService::log_query(const QueryRequest& request, const ApiQueryResponse& response) const {
  if (!log_) return;
  json line{{"text", request.text}, {"kind", to_string(response.kind)}};
  line["question_id"] = response.question ? json(response.question->id) : json(nullptr);
  std::lock_guard lock(log_mutex_);
  *log_ << line.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  log_->flush();
}

HealthStatus QueryService::health() const {
  const auto e = engine();
  if (!e || !e->has_index()) return {"loading", 0, std::nullopt};
  return {"ok", e->corpus().question_count(), kIndexFormatVersion};
}

HttpReply QueryService::query_endpoint(std::string_view body) const {
  QueryRequest request;
  try {
    const auto j = json::parse(body);
    if (!j.is_object()) return reply(400, error_body("request body must be a JSON object"));
    auto text = j.find("text");
    if (text == j.end() || !text->is_string()) return reply(400, error_body("'text' must be a string"));
    request.text = text->get<std::string>();
    if (auto debug = j.find("debug"); debug != j.end() && !debug->is_null()) {
      if (!debug->is_boolean()) return reply(400, error_body("'debug' must be a boolean"));
      request.debug = debug->get<bool>();
    }
    if (auto k = j.find("k"); k != j.end() && !k->is_null()) {
      if (!k->is_number_unsigned() || k->get<std::size_t>() == 0) {
        return reply(400, error_body("'k' must be a positive integer"));
      }
      request.k = k->get<std::size_t>();
    }
  } catch (const json::exception&) {
    return reply(400, error_body("request body is not valid JSON"));
  }

  try {
    return {200, to_json(handle_query(request))};
  } catch (const EmptyQuery& e) {
    return reply(400, error_body(e.what()));
  } catch (const IndexNotBuilt& e) {
    return reply(503, error_body("index not loaded"));
  } catch (const std::exception& e) {
    return reply(500, error_body(e.what()));
  }
}

HttpReply QueryService::health_endpoint() const { return {200, to_json(health())}; }

}  // namespace tuxqa
