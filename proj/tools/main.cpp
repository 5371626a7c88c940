#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <pthread.h>
#include <thread>

#include "tuxqa/engine.hpp"
#include "tuxqa/errors.hpp"
#include "tuxqa/eval.hpp"
#include "tuxqa/service.hpp"
#include "tuxqa/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitStartupFailure = 2;

tuxqa::FieldWeights parse_weights(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--weights", "expected t,b");
  tuxqa::FieldWeights w;
  try {
    w.title = std::stod(text.substr(0, comma));
    w.body = std::stod(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--weights", "expected two numbers, got '" + text + "'");
  }
  w.validate();
  return w;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tuxqa::IoError(path.string(), "cannot open");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

tuxqa::Corpus load_corpus(const fs::path& path) {
  if (path.extension() == ".xml") return tuxqa::load_stackexchange_xml(path);
  return tuxqa::load_jsonl(path);
}

// Explicit paths win; otherwise tags.txt and tag_synonyms.csv next to the corpus.
tuxqa::TagCatalog load_catalog(const fs::path& corpus, std::string tags, std::string synonyms) {
  const auto dir = corpus.parent_path();
  if (tags.empty() && fs::exists(dir / "tags.txt")) tags = (dir / "tags.txt").string();
  if (synonyms.empty() && fs::exists(dir / "tag_synonyms.csv")) synonyms = (dir / "tag_synonyms.csv").string();
  if (tags.empty()) return {};
  if (synonyms.empty()) return tuxqa::parse_tag_catalog(read_file(tags), "");
  return tuxqa::load_tag_catalog(tags, synonyms);
}

void print_text(const tuxqa::ApiQueryResponse& r, bool debug) {
  std::cout << "kind: " << tuxqa::to_string(r.kind) << '\n';
  if (r.category) std::cout << "category: " << tuxqa::to_string(*r.category) << '\n';
  if (r.question) std::cout << "question: [" << r.question->id << "] " << r.question->title << '\n';
  std::cout << '\n' << r.reply_text << '\n';
  if (!debug) return;
  std::cout << "\nkeywords:";
  for (const auto& k : *r.keywords) std::cout << ' ' << k;
  std::cout << "\nquery vector:";
  for (const auto& [tag, d] : r.query_vector->entries) std::cout << ' ' << tag << ':' << d;
  std::cout << "\nfallback steps: " << *r.fallback_steps << "\n\n";
  std::cout << "rank  id        fused     cosine    tfidf     title\n";
  std::size_t rank = 1;
  for (const auto& c : *r.candidates) {
    std::printf("%-5zu %-9llu %-9.5f %-9.5f %-9.5f %s\n", rank++, static_cast<unsigned long long>(c.id), c.fused,
                c.cosine, c.tfidf, c.title.c_str());
  }
  std::cout << "\ntimings (ms):";
  for (const auto& [stage, ms] : r.timings_ms) std::cout << ' ' << stage << '=' << ms;
  std::cout << '\n';
}

int run_serve(const fs::path& index, int port, const std::string& host, const std::string& static_dir,
              const std::string& log, std::size_t k, const std::optional<tuxqa::FieldWeights>& weights) {
  if (const char* env = std::getenv("TUX_PORT"); env && *env) {
    try {
      port = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "error: TUX_PORT is not a number: " << env << '\n';
      return kExitStartupFailure;
    }
  }

  // Signals go to a dedicated waiter thread, never to the server threads.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::unique_ptr<tuxqa::QueryService> service;
  std::unique_ptr<tuxqa::HttpServer> server;
  try {
    tuxqa::ServiceOptions options{k, weights, std::nullopt};
    if (!log.empty()) options.query_log = log;
    service = std::make_unique<tuxqa::QueryService>(options);
    service->load(std::make_shared<const tuxqa::Engine>(tuxqa::load_engine(index)));
    std::optional<fs::path> statics;
    if (!static_dir.empty()) statics = static_dir;
    server = std::make_unique<tuxqa::HttpServer>(*service, statics);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStartupFailure;
  }
  const int bound = server->bind(host, port);
  if (bound < 0) {
    std::cerr << "error: cannot bind " << host << ':' << port << '\n';
    return kExitStartupFailure;
  }
  std::cerr << "listening on http://" << host << ':' << bound << '\n';

  bool ok = true;
  std::thread loop([&] { ok = server->serve(); });
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server->stop();
  });
  loop.join();
  if (!ok) {
    std::cerr << "error: server loop failed\n";
    std::_Exit(kExitStartupFailure);
  }
  waiter.join();
  std::cerr << "shut down\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Question answering over Ubuntu Q&A posts"};
  app.require_subcommand(1);
  app.fallthrough();

  std::size_t k = tuxqa::kDefaultTopK;
  std::string weights_text;
  app.add_option("--k", k, "Candidate count")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--weights", weights_text, "Field weights t,b (default 0.5,0.5)");

  std::string corpus_path, out_path, tags_path, synonyms_path;
  auto* build = app.add_subcommand("build-index", "Index a corpus (JSONL or Stack Exchange Posts.xml)");
  build->add_option("corpus", corpus_path)->required()->check(CLI::ExistingFile);
  build->add_option("out", out_path)->required();
  build->add_option("--tags", tags_path, "Canonical tag list")->check(CLI::ExistingFile);
  build->add_option("--synonyms", synonyms_path, "alias,canonical CSV")->check(CLI::ExistingFile);

  std::string index_path, query_text;
  bool debug = false, as_json = false;
  auto* query = app.add_subcommand("query", "Answer one query");
  query->add_option("index", index_path)->required()->check(CLI::ExistingFile);
  query->add_option("text", query_text)->required();
  query->add_flag("--debug", debug, "Show candidates, scores and timings");
  query->add_flag("--json", as_json, "Print the API response JSON");

  int port = 8080;
  std::string host = "127.0.0.1", static_dir, log_path;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("index", index_path)->required()->check(CLI::ExistingFile);
  serve->add_option("--port", port, "Port (TUX_PORT overrides)")->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--static-dir", static_dir, "Directory served at /")->check(CLI::ExistingDirectory);
  serve->add_option("--log", log_path, "Append-only JSONL query log");

  std::string gold_path, judgments_path;
  std::vector<std::size_t> ks{1, 5, 10, 20};
  bool parallel = false;
  auto* eval = app.add_subcommand("eval", "Recall@k, judgment totals and latency");
  eval->add_option("index", index_path)->required()->check(CLI::ExistingFile);
  eval->add_option("gold", gold_path)->required()->check(CLI::ExistingFile);
  eval->add_option("--judgments", judgments_path)->check(CLI::ExistingFile);
  eval->add_option("--ks", ks, "Recall cut-offs")->delimiter(',');
  eval->add_flag("--json", as_json);
  eval->add_flag("--parallel", parallel, "Use all cores (skips latency)");

  std::string synth_dir;
  tuxqa::SyntheticOptions synth;
  auto* gen = app.add_subcommand("gen-synthetic", "Write a synthetic corpus and gold queries");
  gen->add_option("dir", synth_dir)->required();
  gen->add_option("--questions", synth.questions)->capture_default_str();
  gen->add_option("--seed", synth.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors count as startup failures.
    return app.exit(e) == 0 ? 0 : kExitStartupFailure;
  }

  try {
    std::optional<tuxqa::FieldWeights> weights;
    if (!weights_text.empty()) weights = parse_weights(weights_text);

    if (*build) {
      const auto catalog = load_catalog(corpus_path, tags_path, synonyms_path);
      auto engine = tuxqa::Engine::build(load_corpus(corpus_path), catalog, tuxqa::EngineResources::bundled(),
                                         weights.value_or(tuxqa::FieldWeights{}));
      tuxqa::save_engine(engine, out_path);
      std::cerr << "indexed " << engine.corpus().question_count() << " questions into " << out_path << '\n';
      return 0;
    }
    if (*query) {
      tuxqa::QueryService service({k, weights, std::nullopt});
      service.load(std::make_shared<const tuxqa::Engine>(tuxqa::load_engine(index_path)));
      const auto response = service.handle_query({query_text, debug, k});
      if (as_json) {
        std::cout << tuxqa::to_json(response) << '\n';
      } else {
        print_text(response, debug && response.candidates.has_value());
      }
      return 0;
    }
    if (*serve) return run_serve(index_path, port, host, static_dir, log_path, k, weights);
    if (*eval) {
      const auto engine = tuxqa::load_engine(index_path);
      const auto gold = tuxqa::load_gold_queries(gold_path, engine.corpus());
      std::vector<tuxqa::Judgment> judgments;
      if (!judgments_path.empty()) judgments = tuxqa::load_judgments(judgments_path);
      tuxqa::EvalOptions options;
      options.ks = ks;
      options.candidate_k = k;
      options.parallel = parallel;
      const auto report = tuxqa::evaluate(engine, gold, judgments, options);
      std::cout << (as_json ? tuxqa::report_to_json(report) : tuxqa::report_to_text(report)) << '\n';
      return 0;
    }
    if (*gen) {
      tuxqa::write_synthetic(tuxqa::generate_synthetic(synth), synth_dir);
      return 0;
    }
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kExitStartupFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
