// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and thresholds are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "random_corpus.hpp"
#include "tuxqa/classify.hpp"
#include "tuxqa/engine.hpp"
#include "tuxqa/eval.hpp"
#include "tuxqa/semvec.hpp"
#include "tuxqa/synthetic.hpp"

using namespace tuxqa;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kScoreTolerance = 1e-9;
constexpr double kOracleSeconds = 10.0;
constexpr std::size_t kOracleCorpora = 3;
constexpr std::size_t kOracleMaxQuestions = 200;
constexpr std::size_t kOracleQueriesPerCorpus = 50;
constexpr std::size_t kPipelineQuestions = 50;
constexpr std::size_t kPipelineQueries = 25;
constexpr std::size_t kMinExtraSentences = 20;
constexpr double kMinRecallAt20 = 0.80;
constexpr std::size_t kLatencyCorpus = 10000;
constexpr std::size_t kLatencyQueries = 50;
constexpr double kMaxMeanLatencyMs = 100.0;
constexpr std::size_t kCosineVectors = 1000;
constexpr double kSelfSimilarityTolerance = 1e-12;
constexpr double kScalingTolerance = 1e-12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << std::fixed << v;
  return os.str();
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << v;
  return os.str();
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome worked_example() {
  const TagCatalog catalog({"ubuntu", "windows"}, {});
  const auto tokens = Analyzer::bundled().analyze("How do I install Ubuntu on Windows?");
  const auto root = find_root(tokens, catalog);
  const auto v = build_word_vector(tokens, root, catalog);
  const std::map<std::string, std::uint32_t> want{{"ubuntu", 1}, {"windows", 3}};
  const bool ok = tokens[root].normalized == "install" && v.entries == want;
  std::string vec;
  for (const auto& [tag, d] : v.entries) vec += " " + tag + ":" + std::to_string(d);
  return {ok, "root=" + tokens[root].normalized + " vector={" + vec + " }"};
}

Outcome tfidf_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240611);
  const auto& analyzer = Analyzer::bundled();
  double worst = 0.0;
  std::size_t queries = 0;
  for (std::size_t c = 0; c < kOracleCorpora; ++c) {
    const auto corpus = oracle::random_corpus(rng, 1 + rng() % kOracleMaxQuestions);
    const auto index = build_index(corpus, analyzer);
    const auto model = oracle::build_tfidf(corpus, analyzer);
    for (std::size_t q = 0; q < kOracleQueriesPerCorpus; ++q, ++queries) {
      const auto kw = oracle::random_keywords(rng, corpus, analyzer);
      const auto got = index.score(kw);
      const auto want = oracle::score(model, kw, {});
      if (got.size() != want.size()) return {false, "result count differs on query " + std::to_string(queries)};
      for (std::size_t i = 0; i < got.size(); ++i) {
        if (got[i].question_id != want[i].question_id) {
          return {false, "ordering differs on query " + std::to_string(queries)};
        }
        worst = std::max(worst, std::abs(got[i].tfidf_score - want[i].tfidf_score));
      }
    }
  }
  const double elapsed = seconds_since(t0);
  return {worst <= kScoreTolerance && elapsed < kOracleSeconds,
          std::to_string(queries) + " queries, max |diff|=" + sci(worst) + ", " + fmt(elapsed, 2) + " s"};
}

Outcome pipeline_oracle() {
  SyntheticOptions opts;
  opts.questions = kPipelineQuestions;
  const auto data = generate_synthetic(opts);
  const auto engine = Engine::build(data.corpus, data.catalog, EngineResources::bundled());
  std::mt19937_64 rng(4242);
  std::size_t matched = 0;
  std::string first_failure;
  for (const auto& q : oracle::fuzz_queries(data.corpus, data.catalog, rng, kPipelineQueries)) {
    const auto want = oracle::answer_query(data.corpus, data.catalog, engine.resources().analyzer,
                                           engine.resources().negative_words, q, kDefaultTopK, {});
    const auto d = oracle::diff(engine.answer_query(q), want);
    if (d.empty()) {
      ++matched;
    } else if (first_failure.empty()) {
      first_failure = " first mismatch: \"" + q + "\": " + d;
    }
  }
  return {matched == kPipelineQueries,
          std::to_string(matched) + "/" + std::to_string(kPipelineQueries) + " queries match" + first_failure};
}

Outcome judgment_totals() {
  auto table = [](std::size_t u, std::size_t f, std::size_t a) {
    std::vector<Judgment> js;
    for (std::size_t i = 0; i < u; ++i) js.push_back({"q", Grade::Unacceptable});
    for (std::size_t i = 0; i < f; ++i) js.push_back({"q", Grade::Fair});
    for (std::size_t i = 0; i < a; ++i) js.push_back({"q", Grade::Acceptable});
    return aggregate_judgments(js);
  };
  const auto first = table(14, 21, 15);
  const auto second = table(9, 11, 30);
  const bool ok = first.total_score == 51 && second.total_score == 71 && first.max_score == 100 &&
                  second.max_score == 100;
  return {ok, "(14,21,15)->" + std::to_string(first.total_score) + "/" + std::to_string(first.max_score) +
                  " (9,11,30)->" + std::to_string(second.total_score) + "/" + std::to_string(second.max_score)};
}

Outcome classification() {
  auto category = [](std::string_view text) {
    return classify(Analyzer::bundled().analyze(text), NegativeLexicon::bundled());
  };
  std::size_t total = 0, agree = 0;
  auto check = [&](const std::string& text, QueryCategory want) {
    ++total;
    if (category(text) == want) ++agree;
  };
  check("My Ubuntu does not boot when installed with Windows", QueryCategory::Troubleshooting);
  check("How do I install Ubuntu on Windows?", QueryCategory::Factual);

  std::ifstream in(fixtures::path("classification.csv"));
  if (!in) return {false, "classification.csv missing"};
  std::size_t extra = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.rfind(',');
    auto text = line.substr(0, comma);
    if (text.size() >= 2 && text.front() == '"') text = text.substr(1, text.size() - 2);
    const auto label = parse_category(line.substr(comma + 1));
    if (!label) return {false, "bad label in classification.csv"};
    check(text, *label);
    ++extra;
  }
  return {agree == total && extra >= kMinExtraSentences,
          std::to_string(agree) + "/" + std::to_string(total) + " agree (" + std::to_string(extra) + " extra)"};
}

Outcome fallback() {
  const auto engine = fixtures::engine("fallback");
  const auto r = engine.answer_query("How do I configure grub timeout?");
  const bool ok = r.candidates.size() >= 2 && r.selected && r.selected->question_id == r.candidates[1].question_id &&
                  r.fallback_steps == 1;
  return {ok, "selected=" + (r.selected ? std::to_string(r.selected->question_id) : std::string("none")) +
                  " fallback_steps=" + std::to_string(r.fallback_steps)};
}

Outcome synthetic_recall() {
  const auto engine = fixtures::engine("synthetic");
  const auto gold = load_gold_queries(fixtures::path("synthetic/gold_queries.csv"), engine.corpus());
  const auto r = recall_at_k(engine, gold, {{1, 5, 20}, kDefaultTopK, false});
  const double r1 = r.ir.at(1), r5 = r.ir.at(5), r20 = r.ir.at(20);
  return {r20 >= kMinRecallAt20 && r20 >= r5 && r5 >= r1,
          std::to_string(gold.size()) + " queries, recall@1=" + fmt(r1) + " @5=" + fmt(r5) + " @20=" + fmt(r20)};
}

Outcome latency() {
  SyntheticOptions opts;
  opts.questions = kLatencyCorpus;
  const auto data = generate_synthetic(opts);
  const auto engine = Engine::build(data.corpus, data.catalog, EngineResources::bundled());
  std::vector<double> samples;
  for (std::size_t i = 0; i < kLatencyQueries; ++i) {
    const auto& q = data.gold[(i * data.gold.size()) / kLatencyQueries].query_text;
    const auto t0 = Clock::now();
    const auto r = engine.answer_query(q);
    samples.push_back(seconds_since(t0) * 1000.0);
    if (r.keywords.empty()) return {false, "query without keywords: " + q};
  }
  const auto s = latency_stats(samples);
  return {s.mean_ms < kMaxMeanLatencyMs, std::to_string(kLatencyQueries) + " queries on " +
                                             std::to_string(kLatencyCorpus) + " questions, mean=" + fmt(s.mean_ms, 3) +
                                             " ms p95=" + fmt(s.p95_ms, 3) + " ms"};
}

Outcome cosine_properties() {
  std::mt19937_64 rng(1000);
  const std::vector<std::string> tags{"ubuntu", "windows", "grub2", "nvidia", "wireless", "boot",
                                      "kernel", "ssh",     "sound", "16.04",  "mount",    "usb"};
  auto random_vec = [&] {
    WordVector v;
    const auto n = rng() % (tags.size() + 1);
    for (std::size_t i = 0; i < n; ++i) v.entries[tags[rng() % tags.size()]] = 1 + rng() % 40;
    return v;
  };
  std::vector<WordVector> vs;
  for (std::size_t i = 0; i < kCosineVectors; ++i) vs.push_back(random_vec());
  std::size_t violations = 0;
  double worst_self = 0.0, worst_scale = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& a = vs[i];
    const auto& b = vs[(i * 7 + 1) % vs.size()];
    const double ab = cosine(a, b);
    if (ab != cosine(b, a) || ab < 0.0 || ab > 1.0) ++violations;
    if (!a.empty()) worst_self = std::max(worst_self, std::abs(cosine(a, a) - 1.0));
    const std::uint32_t factor = 2 + rng() % 9;
    WordVector as = a, bs = b;
    for (auto& [_, d] : as.entries) d *= factor;
    for (auto& [_, d] : bs.entries) d *= factor;
    worst_scale = std::max(worst_scale, std::abs(cosine(as, bs) - ab));
  }
  return {violations == 0 && worst_self <= kSelfSimilarityTolerance && worst_scale <= kScalingTolerance,
          std::to_string(kCosineVectors) + " vectors, violations=" + std::to_string(violations) +
              " max|self-1|=" + sci(worst_self) + " max|scale diff|=" + sci(worst_scale)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"worked-example-word-vector", worked_example},
      {"tfidf-matches-brute-force", tfidf_oracle},
      {"pipeline-matches-brute-force", pipeline_oracle},
      {"judgment-totals", judgment_totals},
      {"classification-agreement", classification},
      {"fallback-to-next-candidate", fallback},
      {"synthetic-recall-at-k", synthetic_recall},
      {"answer-latency-10k", latency},
      {"cosine-properties", cosine_properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
