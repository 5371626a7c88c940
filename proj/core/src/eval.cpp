#include "tuxqa/eval.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <json.hpp>
#include <numeric>
#include <sstream>
#include <thread>

#include "csv.hpp"
#include "io_util.hpp"
#include "tuxqa/errors.hpp"
#include "tuxqa/text.hpp"

namespace tuxqa {

using nlohmann::json;

namespace {

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<Grade> parse_grade(std::string_view s) {
  const auto name = to_lower(trim(s));
  if (name == "0" || name == "unacceptable") return Grade::Unacceptable;
  if (name == "1" || name == "fair") return Grade::Fair;
  if (name == "2" || name == "acceptable") return Grade::Acceptable;
  return std::nullopt;
}

struct Outcome {
  std::optional<std::size_t> ir_rank;
  std::optional<std::size_t> rerank_rank;
  bool retrieved = false;
  bool lost = false;
  QueryCategory category = QueryCategory::Factual;
  double latency_ms = 0.0;
};

Outcome run_one(const Engine& engine, const GoldQuery& gold, std::size_t ir_depth, std::size_t candidate_k) {
  Outcome out;
  const auto ir = engine.retrieve(gold.query_text, QueryOptions{ir_depth, std::nullopt});
  for (std::size_t i = 0; i < ir.size(); ++i) {
    if (ir[i].question_id == gold.gold_question_id) {
      out.ir_rank = i;
      break;
    }
  }
  const auto result = engine.answer_query(gold.query_text, candidate_k);
  out.category = result.query_category;
  out.latency_ms = result.timings.total_ms;
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    if (result.candidates[i].question_id == gold.gold_question_id) {
      out.rerank_rank = i;
      break;
    }
  }
  out.retrieved = std::any_of(result.retrieved.begin(), result.retrieved.end(),
                              [&](const ScoredDoc& d) { return d.question_id == gold.gold_question_id; });
  out.lost = out.retrieved && !out.rerank_rank;
  return out;
}

std::vector<Outcome> run_all(const Engine& engine, std::span<const GoldQuery> gold, const EvalOptions& options) {
  if (gold.empty()) throw EmptyGoldSet();
  if (options.candidate_k == 0) throw DomainError("candidate_k must be positive");
  std::size_t depth = options.candidate_k;
  for (auto k : options.ks) {
    if (k == 0) throw DomainError("k must be positive");
    depth = std::max(depth, k);
  }

  std::vector<Outcome> outcomes(gold.size());
  if (!options.parallel) {
    for (std::size_t i = 0; i < gold.size(); ++i) outcomes[i] = run_one(engine, gold[i], depth, options.candidate_k);
    return outcomes;
  }
  const auto workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), gold.size()));
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < gold.size(); i += workers) {
          outcomes[i] = run_one(engine, gold[i], depth, options.candidate_k);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outcomes;
}

RecallReport summarize(std::span<const Outcome* const> outcomes, const EvalOptions& options) {
  RecallReport report;
  report.queries = outcomes.size();
  report.candidate_k = options.candidate_k;
  for (const auto* o : outcomes) {
    if (o->retrieved) ++report.gold_retrieved;
    if (o->lost) ++report.lost_to_category_filter;
  }
  const auto n = static_cast<double>(outcomes.size());
  for (auto k : options.ks) {
    std::size_t ir_hits = 0;
    std::size_t rerank_hits = 0;
    for (const auto* o : outcomes) {
      if (o->ir_rank && *o->ir_rank < k) ++ir_hits;
      if (o->rerank_rank && *o->rerank_rank < k) ++rerank_hits;
    }
    report.ir[k] = n > 0 ? ir_hits / n : 0.0;
    report.reranked[k] = n > 0 ? rerank_hits / n : 0.0;
  }
  return report;
}

json recall_json(const RecallReport& r) {
  json ir = json::object();
  json rr = json::object();
  for (const auto& [k, v] : r.ir) ir[std::to_string(k)] = v;
  for (const auto& [k, v] : r.reranked) rr[std::to_string(k)] = v;
  return {{"queries", r.queries},
          {"candidate_k", r.candidate_k},
          {"ir", ir},
          {"reranked", rr},
          {"gold_retrieved", r.gold_retrieved},
          {"lost_to_category_filter", r.lost_to_category_filter}};
}

json judgments_json(const JudgmentTotals& t) {
  return {{"unacceptable", t.unacceptable}, {"fair", t.fair},           {"acceptable", t.acceptable},
          {"count", t.count()},             {"total_score", t.total_score}, {"max_score", t.max_score}};
}

json latency_json(const LatencyStats& l) {
  return {{"count", l.count}, {"mean_ms", l.mean_ms}, {"median_ms", l.median_ms}, {"p95_ms", l.p95_ms}};
}

void write_recall(std::ostringstream& out, const RecallReport& r, const std::string& indent) {
  out << indent << "queries: " << r.queries << "\n";
  out << indent << std::left << std::setw(8) << "k" << std::setw(12) << "ir" << "reranked\n";
  for (const auto& [k, v] : r.ir) {
    out << indent << std::setw(8) << k << std::setw(12) << std::fixed << std::setprecision(4) << v
        << r.reranked.at(k) << "\n";
  }
  out << indent << "gold in top " << r.candidate_k << ": " << r.gold_retrieved
      << ", lost to category filter: " << r.lost_to_category_filter << "\n";
}

void write_judgments(std::ostringstream& out, const JudgmentTotals& t, const std::string& indent) {
  out << indent << "unacceptable " << t.unacceptable << ", fair " << t.fair << ", acceptable " << t.acceptable
      << "  -> score " << t.total_score << " / " << t.max_score << "\n";
}

void write_latency(std::ostringstream& out, const LatencyStats& l, const std::string& indent) {
  out << indent << std::fixed << std::setprecision(3) << "latency ms: mean " << l.mean_ms << ", median "
      << l.median_ms << ", p95 " << l.p95_ms << " (n=" << l.count << ")\n";
}

}  // namespace

std::vector<GoldQuery> parse_gold_queries(std::string_view content, const Corpus& corpus) {
  std::vector<GoldQuery> out;
  const auto rows = detail::parse_csv(content);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != 2) throw ParseError(row.line, "expected \"query text\",gold_question_id");
    const auto id = parse_uint(row.fields[1]);
    if (!id) {
      if (r == 0) continue;  // header
      throw ParseError(row.line, "gold_question_id is not an integer");
    }
    if (trim(row.fields[0]).empty()) throw ParseError(row.line, "empty query text");
    const auto* post = corpus.find(*id);
    if (!post || !post->is_question()) throw InvariantError(*id, "gold id is not a question of the corpus", row.line);
    out.push_back({row.fields[0], *id});
  }
  return out;
}

std::vector<GoldQuery> load_gold_queries(const std::filesystem::path& path, const Corpus& corpus) {
  return parse_gold_queries(detail::read_file(path), corpus);
}

std::vector<Judgment> parse_judgments(std::string_view content) {
  std::vector<Judgment> out;
  const auto rows = detail::parse_csv(content);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != 2) throw ParseError(row.line, "expected \"query text\",grade");
    const auto grade = parse_grade(row.fields[1]);
    if (!grade) {
      if (r == 0) continue;
      throw ParseError(row.line, "grade must be 0, 1 or 2");
    }
    out.push_back({row.fields[0], *grade});
  }
  return out;
}

std::vector<Judgment> load_judgments(const std::filesystem::path& path) {
  return parse_judgments(detail::read_file(path));
}

JudgmentTotals aggregate_judgments(std::span<const Judgment> judgments) {
  JudgmentTotals t;
  for (const auto& j : judgments) {
    switch (j.grade) {
      case Grade::Unacceptable: ++t.unacceptable; break;
      case Grade::Fair: ++t.fair; break;
      case Grade::Acceptable: ++t.acceptable; break;
    }
    t.total_score += static_cast<std::size_t>(j.grade);
  }
  t.max_score = 2 * t.count();
  return t;
}

LatencyStats latency_stats(std::span<const double> samples_ms) {
  if (samples_ms.empty()) throw EmptySamples();
  std::vector<double> sorted(samples_ms.begin(), samples_ms.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = sorted.size();
  LatencyStats s;
  s.count = n;
  s.mean_ms = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
  s.median_ms = sorted[(n - 1) / 2];
  const auto rank = (95 * n + 99) / 100;  // ceil(0.95 n), at least 1
  s.p95_ms = sorted[std::max<std::size_t>(rank, 1) - 1];
  return s;
}

RecallReport recall_at_k(const Engine& engine, std::span<const GoldQuery> gold, const EvalOptions& options) {
  const auto outcomes = run_all(engine, gold, options);
  std::vector<const Outcome*> all;
  for (const auto& o : outcomes) all.push_back(&o);
  return summarize(all, options);
}

EvalReport evaluate(const Engine& engine, std::span<const GoldQuery> gold, std::span<const Judgment> judgments,
                    const EvalOptions& options) {
  const auto outcomes = run_all(engine, gold, options);
  EvalReport report;

  std::vector<const Outcome*> all;
  std::map<QueryCategory, std::vector<const Outcome*>> by_category;
  for (const auto& o : outcomes) {
    all.push_back(&o);
    by_category[o.category].push_back(&o);
  }
  report.recall = summarize(all, options);

  const auto latencies = [](std::span<const Outcome* const> os) {
    std::vector<double> v;
    for (const auto* o : os) v.push_back(o->latency_ms);
    return latency_stats(v);
  };
  if (!options.parallel) report.latency = latencies(all);

  for (const auto& [category, os] : by_category) {
    auto& slice = report.per_category[category];
    slice.recall = summarize(os, options);
    if (!options.parallel) slice.latency = latencies(os);
  }

  if (!judgments.empty()) {
    report.judgments = aggregate_judgments(judgments);
    std::map<QueryCategory, std::vector<Judgment>> split;
    for (const auto& j : judgments) split[engine.classify_text(j.query_text)].push_back(j);
    for (const auto& [category, js] : split) report.per_category[category].judgments = aggregate_judgments(js);
  }
  return report;
}

std::string report_to_json(const EvalReport& report) {
  json j;
  j["recall"] = recall_json(report.recall);
  if (report.judgments) j["judgments"] = judgments_json(*report.judgments);
  if (report.latency) j["latency"] = latency_json(*report.latency);
  json per = json::object();
  for (const auto& [category, slice] : report.per_category) {
    json s = json::object();
    if (slice.recall) s["recall"] = recall_json(*slice.recall);
    if (slice.judgments) s["judgments"] = judgments_json(*slice.judgments);
    if (slice.latency) s["latency"] = latency_json(*slice.latency);
    per[std::string(to_string(category))] = std::move(s);
  }
  j["per_category"] = std::move(per);
  return j.dump(2);
}

std::string report_to_text(const EvalReport& report) {
  std::ostringstream out;
  out << "== recall ==\n";
  write_recall(out, report.recall, "  ");
  if (report.judgments) {
    out << "== judgments ==\n";
    write_judgments(out, *report.judgments, "  ");
  }
  if (report.latency) {
    out << "== latency ==\n";
    write_latency(out, *report.latency, "  ");
  }
  for (const auto& [category, slice] : report.per_category) {
    out << "== " << to_string(category) << " ==\n";
    if (slice.recall) write_recall(out, *slice.recall, "  ");
    if (slice.judgments) write_judgments(out, *slice.judgments, "  ");
    if (slice.latency) write_latency(out, *slice.latency, "  ");
  }
  return out.str();
}

}  // namespace tuxqa
