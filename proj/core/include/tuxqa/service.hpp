#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tuxqa/engine.hpp"

namespace tuxqa {

/// Canned replies for greetings. Matching is exact after trimming and case
/// folding, so "hibernate fails" is never taken for "hi".
class SalutationTable {
public:
  explicit SalutationTable(std::map<std::string, std::string> replies);
  static const SalutationTable& bundled();

  std::optional<std::string> reply(std::string_view text) const;
  const std::map<std::string, std::string>& replies() const noexcept { return replies_; }

private:
  std::map<std::string, std::string> replies_;
};

// "phrase,reply" lines; '#' comments ignored.
SalutationTable parse_salutations(std::string_view content);

/// Reply from the bundled table.
std::optional<std::string> salutation_reply(std::string_view text);

enum class ResponseKind { Answer, Salutation, NoResult };

std::string_view to_string(ResponseKind kind) noexcept;

struct QuestionRef {
  PostId id = 0;
  std::string title;
};

struct CandidateView {
  PostId id = 0;
  std::string title;
  double tfidf = 0.0;
  double cosine = 0.0;
  double fused = 0.0;
};

struct ApiQueryResponse {
  ResponseKind kind = ResponseKind::NoResult;
  std::string reply_text;
  std::optional<QuestionRef> question;
  std::optional<std::string> answer;  // answer body as stored (may hold HTML)
  std::optional<QueryCategory> category;
  std::optional<std::vector<CandidateView>> candidates;  // debug only
  std::vector<std::pair<std::string, double>> timings_ms;

  // Debug extras.
  std::optional<std::vector<std::string>> keywords;
  std::optional<WordVector> query_vector;
  std::optional<std::size_t> fallback_steps;
};

std::string to_json(const ApiQueryResponse& response);

struct QueryRequest {
  std::string text;
  bool debug = false;
  std::optional<std::size_t> k;
};

struct HealthStatus {
  std::string status;  // "ok" or "loading"
  std::size_t n_questions = 0;
  std::optional<int> index_version;
};

std::string to_json(const HealthStatus& health);

struct HttpReply {
  int status = 200;
  std::string body;  // JSON
};

struct ServiceOptions {
  std::size_t k = kDefaultTopK;
  std::optional<FieldWeights> weights;
  std::optional<std::filesystem::path> query_log;  // append-only JSONL
};

inline constexpr std::string_view kNoResultMessage =
    "Sorry, I could not find an answered question that matches your query.";

/// Request handling independent of the transport. The engine is installed
/// once with load(); until then queries get HTTP 503.
class QueryService {
public:
  explicit QueryService(ServiceOptions options = {}, SalutationTable salutations = SalutationTable::bundled());
  ~QueryService();

  void load(std::shared_ptr<const Engine> engine);
  bool ready() const;

  /// Throws EmptyQuery for blank text and IndexNotBuilt before load().
  ApiQueryResponse handle_query(const QueryRequest& request) const;
  HealthStatus health() const;

  /// JSON-in/JSON-out wrappers mapping errors to HTTP statuses.
  HttpReply query_endpoint(std::string_view body) const;
  HttpReply health_endpoint() const;

private:
  std::shared_ptr<const Engine> engine() const;
  void log_query(const QueryRequest& request, const ApiQueryResponse& response) const;

  ServiceOptions options_;
  SalutationTable salutations_;
  mutable std::mutex mutex_;
  std::shared_ptr<const Engine> engine_;
  mutable std::mutex log_mutex_;
  mutable std::unique_ptr<std::ofstream> log_;
};

/// HTTP front end: POST /api/query, GET /api/health, static files at '/'.
class HttpServer {
public:
  HttpServer(QueryService& service, std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to host:port (port 0 picks a free one). Returns the bound port or
  /// -1 on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Returns false if the listen loop failed.
  bool serve();
  void stop();
  bool running() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tuxqa
