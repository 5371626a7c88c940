#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "tuxqa/errors.hpp"
#include "tuxqa/semvec.hpp"

using namespace tuxqa;

namespace {

WordVector vec(std::initializer_list<std::pair<const std::string, std::uint32_t>> entries) {
  return WordVector{std::map<std::string, std::uint32_t>(entries)};
}

// Fixed-root finder used to check that the engine honours a swapped finder.
class LastTokenRoot final : public RootFinder {
public:
  std::size_t find_root(std::span<const Token> tokens) const override {
    if (tokens.empty()) throw EmptyInput("empty");
    return tokens.size() - 1;
  }
};

}  // namespace

TEST_SUITE("semvec") {

TEST_CASE("root of the install question") {
  const auto cat = fixtures::ubuntu_windows();
  const auto tokens = Analyzer::bundled().analyze("How do I install Ubuntu on Windows?");
  CHECK(find_root(tokens, cat) == 3);
}

TEST_CASE("root skips auxiliaries") {
  const auto tokens = Analyzer::bundled().analyze("My Ubuntu does not boot when installed with Windows");
  const auto root = find_root(tokens, fixtures::ubuntu_windows());
  CHECK(tokens[root].normalized == "boot");
}

TEST_CASE("root fallbacks") {
  const auto cat = fixtures::ubuntu_windows();
  CHECK(find_root(Analyzer::bundled().analyze("broken"), cat) == 0);
  // No verb: first noun that is not a tag.
  CHECK(find_root(Analyzer::bundled().analyze("ubuntu windows laptop"), cat) == 2);
  // Only tags and function words: position 0.
  CHECK(find_root(Analyzer::bundled().analyze("the ubuntu"), cat) == 0);
  CHECK_THROWS_AS(find_root({}, cat), EmptyInput);
}

TEST_CASE("word vector of the install question") {
  const auto cat = fixtures::ubuntu_windows();
  const auto tokens = Analyzer::bundled().analyze("How do I install Ubuntu on Windows?");
  const auto v = build_word_vector(tokens, 3, cat);
  CHECK(v == vec({{"ubuntu", 1}, {"windows", 3}}));
}

TEST_CASE("word vector rules") {
  const auto& a = Analyzer::bundled();
  const TagCatalog ubuntu({"ubuntu"}, {});
  CHECK(build_word_vector(a.analyze("ubuntu boot ubuntu"), 1, ubuntu) == vec({{"ubuntu", 1}}));
  CHECK(build_word_vector(a.analyze("install the package"), 0, ubuntu).empty());
  // Aliases map to canonical tags; the nearest mention wins.
  const TagCatalog wl({"wireless"}, {{"wifi", "wireless"}});
  CHECK(build_word_vector(a.analyze("wireless card fails on wifi"), 3, wl) == vec({{"wireless", 1}}));
  // The root itself is not counted even when it is a tag.
  CHECK(build_word_vector(a.analyze("ubuntu"), 0, ubuntu).empty());
  CHECK_THROWS_AS(build_word_vector(a.analyze("a b"), 2, ubuntu), DomainError);
}

TEST_CASE("cosine examples") {
  const auto q = vec({{"ubuntu", 1}, {"windows", 3}});
  CHECK(cosine(q, q) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(cosine(q, vec({{"ubuntu", 2}})) - 2.0 / (std::sqrt(10.0) * 2.0)) < 1e-15);
  CHECK(cosine(q, vec({{"ubuntu", 2}})) == doctest::Approx(0.31623).epsilon(1e-5));
  CHECK(cosine(vec({{"ubuntu", 1}}), vec({{"windows", 1}})) == 0.0);
  CHECK(cosine(q, WordVector{}) == 0.0);
  CHECK(cosine(WordVector{}, WordVector{}) == 0.0);
}

TEST_CASE("fuse") {
  CHECK(fuse(1.0, 0.8).fused == doctest::Approx(0.8));
  CHECK(fuse(0.0, 0.9).fused == 0.0);
  CHECK(fuse(0.31623, 0.5).fused == doctest::Approx(0.158115).epsilon(1e-12));
  const auto s = fuse(0.25, 0.5);
  CHECK(s.cosine == 0.25);
  CHECK(s.tfidf_score == 0.5);
  CHECK_THROWS_AS(fuse(1.5, 0.5), DomainError);
  CHECK_THROWS_AS(fuse(0.5, -0.1), DomainError);
  CHECK_THROWS_AS(fuse(std::nan(""), 0.5), DomainError);
}

TEST_CASE("property: cosine over random vectors") {
  std::mt19937_64 rng(31337);
  const std::vector<std::string> tags{"ubuntu", "windows", "grub2", "nvidia", "wireless", "boot", "kernel", "ssh"};
  auto random_vec = [&] {
    WordVector v;
    const auto n = rng() % (tags.size() + 1);
    for (std::size_t i = 0; i < n; ++i) v.entries[tags[rng() % tags.size()]] = 1 + rng() % 30;
    return v;
  };
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_vec();
    const auto b = random_vec();
    const double ab = cosine(a, b);
    CHECK(ab == cosine(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    if (!a.empty()) CHECK(std::abs(cosine(a, a) - 1.0) <= 1e-12);
    const std::uint32_t factor = 1 + rng() % 7;
    WordVector as = a, bs = b;
    for (auto& [_, d] : as.entries) d *= factor;
    for (auto& [_, d] : bs.entries) d *= factor;
    CHECK(std::abs(cosine(as, bs) - ab) <= 1e-12);
  }
}

TEST_CASE("property: fuse is monotone") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double c = u(rng), t = u(rng);
    const double c2 = std::min(1.0, c + u(rng) * (1.0 - c));
    const double t2 = std::min(1.0, t + u(rng) * (1.0 - t));
    CHECK(fuse(c2, t).fused >= fuse(c, t).fused);
    CHECK(fuse(c, t2).fused >= fuse(c, t).fused);
    CHECK(fuse(c, t).fused <= 1.0);
  }
}

TEST_CASE("property: distances are positive and keys canonical") {
  const auto cat = fixtures::catalog("ubuntu");
  const auto& a = Analyzer::bundled();
  for (std::string s : {"wifi drops on ubuntu 16.04 laptop with grub", "grub grub grub", "install ubuntu",
                        "notebook audio xenial trusty", "ubuntu"}) {
    const auto tokens = a.analyze(s);
    const auto v = build_word_vector(tokens, find_root(tokens, cat), cat);
    for (const auto& [tag, d] : v.entries) {
      CHECK(d >= 1);
      CHECK(cat.is_canonical(tag));
    }
  }
}

TEST_CASE("a swapped root finder changes the engine's vectors") {
  auto engine = fixtures::engine("ubuntu");
  const auto before = engine.answer_query("How do I install Ubuntu on Windows?");
  CHECK(before.query_vector == vec({{"ubuntu", 1}, {"windows", 3}}));
  engine.set_root_finder(std::make_shared<LastTokenRoot>());
  const auto after = engine.answer_query("How do I install Ubuntu on Windows?");
  CHECK(after.query_vector == vec({{"ubuntu", 2}}));
}

}
