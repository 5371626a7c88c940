#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "tuxqa/corpus.hpp"
#include "tuxqa/text.hpp"

namespace oracle {

// Random corpus over a small vocabulary so terms collide often.
inline tuxqa::Corpus random_corpus(std::mt19937_64& rng, std::size_t questions) {
  static const std::vector<std::string> vocab{
      "grub",  "kernel", "nvidia", "driver", "wifi",   "boot",    "install", "upgrade", "mount",
      "disk",  "ssh",    "server", "screen", "sound",  "usb",     "printer", "update",  "panel",
      "theme", "font",   "python", "docker", "apache", "firefox", "crash",   "freeze",  "error"};
  std::vector<tuxqa::Post> posts;
  for (std::size_t i = 0; i < questions; ++i) {
    tuxqa::Post p;
    p.id = i + 1;
    const auto title_len = rng() % 6;
    for (std::size_t w = 0; w < title_len; ++w) p.title += vocab[rng() % vocab.size()] + " ";
    const auto body_len = rng() % 25;
    p.body = "<p>";
    for (std::size_t w = 0; w < body_len; ++w) p.body += vocab[rng() % vocab.size()] + " ";
    p.body += "</p>";
    posts.push_back(p);
  }
  return tuxqa::Corpus::from_posts(std::move(posts));
}

// A few keywords from one question, sometimes with an unknown term.
inline std::vector<std::string> random_keywords(std::mt19937_64& rng, const tuxqa::Corpus& corpus,
                                                const tuxqa::Analyzer& analyzer) {
  const auto& q = corpus.question(corpus.question_ids()[rng() % corpus.question_count()]);
  auto kw = analyzer.keywords(q.title + " " + tuxqa::strip_markup(q.body));
  std::shuffle(kw.begin(), kw.end(), rng);
  kw.resize(std::min<std::size_t>(kw.size(), 1 + rng() % 5));
  if (rng() % 4 == 0) kw.push_back("zzz-unknown");
  return kw;
}

}  // namespace oracle
