#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "tuxqa/corpus.hpp"
#include "tuxqa/errors.hpp"

using namespace tuxqa;

namespace {

Post question(PostId id, std::string title, std::optional<PostId> accepted = std::nullopt) {
  Post p;
  p.id = id;
  p.title = std::move(title);
  p.body = "<p>body of " + std::to_string(id) + "</p>";
  p.accepted_answer_id = accepted;
  return p;
}

Post answer(PostId id, PostId parent, std::string body = "run sudo apt update") {
  Post p;
  p.id = id;
  p.kind = PostKind::Answer;
  p.parent_id = parent;
  p.body = std::move(body);
  return p;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("minimal question and answer") {
  const auto c = parse_jsonl(
      R"({"id":1,"kind":"question","title":"t","body":"b","tags":["Boot"],"accepted_answer_id":2})"
      "\n"
      R"({"id":2,"kind":"answer","body":"a","parent_id":1})"
      "\n");
  CHECK(c.question_count() == 1);
  CHECK(c.size() == 2);
  CHECK(c.question(1).tags == std::vector<std::string>{"boot"});
  CHECK(answer_of(c, 1)->id == 2);
}

TEST_CASE("empty input is an empty corpus") {
  CHECK(parse_jsonl("").empty());
  CHECK(parse_jsonl("\n\n").question_count() == 0);
}

TEST_CASE("dangling accepted answer") {
  try {
    parse_jsonl(R"({"id":1,"kind":"question","title":"t","body":"b","accepted_answer_id":99})");
    FAIL("expected InvariantError");
  } catch (const InvariantError& e) {
    CHECK(e.record_id() == 1);
    CHECK(e.line() == 1);
  }
}

TEST_CASE("structural invariants") {
  CHECK_THROWS_AS(Corpus::from_posts({question(1, "a"), question(1, "b")}), InvariantError);
  CHECK_THROWS_AS(Corpus::from_posts({question(0, "a")}), InvariantError);
  CHECK_THROWS_AS(Corpus::from_posts({answer(2, 1)}), InvariantError);  // orphan answer
  // Accepted answer must belong to the question.
  CHECK_THROWS_AS(Corpus::from_posts({question(1, "a", 3), question(2, "b"), answer(3, 2)}), InvariantError);
  // Accepted id pointing at a question.
  CHECK_THROWS_AS(Corpus::from_posts({question(1, "a", 2), question(2, "b")}), InvariantError);
  auto q = question(1, "a");
  q.parent_id = 5;
  CHECK_THROWS_AS(Corpus::from_posts({q}), InvariantError);
}

TEST_CASE("malformed JSONL reports the line") {
  try {
    parse_jsonl("{\"id\":1,\"kind\":\"question\",\"title\":\"t\",\"body\":\"b\"}\n{oops\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_jsonl(R"({"id":1,"kind":"comment","body":"b"})"), ParseError);
  CHECK_THROWS_AS(parse_jsonl(R"({"kind":"question","title":"t","body":"b"})"), ParseError);
}

TEST_CASE("lookups") {
  const auto c = Corpus::from_posts({question(1, "a", 2), answer(2, 1), question(3, "c")});
  CHECK(c.find(2)->kind == PostKind::Answer);
  CHECK(c.find(42) == nullptr);
  CHECK_THROWS_AS(c.at(42), UnknownQuestion);
  CHECK_THROWS_AS(c.question(2), UnknownQuestion);
  CHECK(c.question_ids().size() == 2);
  CHECK(answer_of(c, 3) == nullptr);
  CHECK_THROWS_AS(answer_of(c, 99), UnknownQuestion);
}

TEST_CASE("answer_of needs visible text") {
  CHECK(answer_of(Corpus::from_posts({question(1, "a", 2), answer(2, 1, "   ")}), 1) == nullptr);
  CHECK(answer_of(Corpus::from_posts({question(1, "a", 2), answer(2, 1, "<p> </p>")}), 1) == nullptr);
  // A code-only answer still says something.
  CHECK(answer_of(Corpus::from_posts({question(1, "a", 2), answer(2, 1, "<pre><code>sudo apt update</code></pre>")}),
                  1) != nullptr);
}

TEST_CASE("JSONL round trip") {
  const auto original = load_jsonl(fixtures::path("ubuntu/corpus.jsonl"));
  const auto again = parse_jsonl(to_jsonl(original));
  CHECK(again == original);
  CHECK(to_jsonl(again) == to_jsonl(original));

  fixtures::TempDir tmp("tuxqa-corpus");
  save_jsonl(original, tmp / "c.jsonl");
  CHECK(load_jsonl(tmp / "c.jsonl") == original);
}

TEST_CASE("property: random corpora round trip") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    std::vector<Post> posts;
    PostId next = 1;
    const auto n = 1 + rng() % 20;
    for (std::size_t i = 0; i < n; ++i) {
      auto q = question(next++, "title \"" + std::to_string(rng() % 1000) + "\" \\ é\n");
      q.tags = {"t" + std::to_string(rng() % 5)};
      q.score = static_cast<std::int64_t>(rng() % 100) - 50;
      const bool answered = rng() % 2;
      if (answered) q.accepted_answer_id = next;
      posts.push_back(q);
      if (answered) posts.push_back(answer(next++, q.id, "<p>x &amp; y</p>"));
    }
    const auto c = Corpus::from_posts(posts);
    CHECK(parse_jsonl(to_jsonl(c)) == c);
  }
}

TEST_CASE("Posts.xml") {
  const auto c = load_stackexchange_xml(fixtures::path("Posts.xml"));
  CHECK(c.question_count() == 2);
  CHECK(c.find(3) == nullptr);  // tag wiki row skipped
  const auto& q = c.question(1);
  CHECK(q.title == "Ubuntu won't boot after GRUB update");
  CHECK(q.tags == std::vector<std::string>{"boot", "grub2"});
  CHECK(q.body == "<p>After <code>update-grub</code> I get a black screen.</p>");
  CHECK(q.score == 12);
  CHECK(answer_of(c, 1)->id == 2);
  CHECK(c.question(4).title == "How to install the Nvidia driver & keep Nouveau?");
  CHECK(c.question(4).tags == std::vector<std::string>{"nvidia", "drivers"});
  CHECK(answer_of(c, 4) == nullptr);
}

TEST_CASE("Posts.xml rows") {
  const std::string head = "<?xml version=\"1.0\"?>\n<posts>\n";
  const auto row =
      R"(<row Id="7" PostTypeId="1" Title="t" Body="b" Tags="&lt;boot&gt;&lt;grub2&gt;" />)";
  CHECK(parse_stackexchange_xml(head + row + "\n</posts>").question(7).tags ==
        std::vector<std::string>{"boot", "grub2"});
  CHECK(parse_stackexchange_xml(head + R"(<row Id="5" PostTypeId="5" Body="wiki" />)" + "</posts>").empty());
  CHECK(parse_stackexchange_xml(head + "</posts>").empty());
  try {
    parse_stackexchange_xml(head + R"(<row Id="x" PostTypeId="1" Title="t" Body="b" />)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_stackexchange_xml(""), ParseError);
  CHECK_THROWS_AS(parse_stackexchange_xml(head + R"(<row Id="1" PostTypeId="1" Title="t" Body="b" AcceptedAnswerId="9" />)"),
                  InvariantError);
}

TEST_CASE("split_tag_attribute") {
  CHECK(split_tag_attribute("<boot><grub2>") == std::vector<std::string>{"boot", "grub2"});
  CHECK(split_tag_attribute("|Boot|grub2|") == std::vector<std::string>{"boot", "grub2"});
  CHECK(split_tag_attribute("").empty());
}

TEST_CASE("tag catalog") {
  const TagCatalog cat({"ubuntu", "windows", "wireless"}, {{"wifi", "wireless"}});
  CHECK(cat.canonical_tag("wifi") == "wireless");
  CHECK(canonical_tag(cat, "wireless") == "wireless");
  CHECK(cat.canonical_tag("Ubuntu") == "ubuntu");
  CHECK(cat.canonical_tag("WiFi") == "wireless");
  CHECK_FALSE(cat.canonical_tag("banana").has_value());
  CHECK(cat.is_canonical("windows"));
  CHECK_FALSE(cat.is_canonical("wifi"));

  CHECK_THROWS_AS(TagCatalog({"ubuntu", "windows", "wireless"}, {{"wifi", "networking"}}), InvariantError);
  CHECK_THROWS_AS(TagCatalog({"ubuntu", "windows"}, {{"windows", "ubuntu"}}), InvariantError);
}

TEST_CASE("tag catalog files") {
  const auto cat = fixtures::catalog("ubuntu");
  CHECK(cat.canonical_tags().size() == 17);
  CHECK(cat.canonical_tag("grub") == "grub2");
  CHECK(cat.canonical_tag("xenial") == "16.04");
  CHECK_THROWS_AS(parse_tag_catalog("a\n", "b\n"), ParseError);
  CHECK_THROWS_AS(load_tag_catalog("/nonexistent/tags.txt", "/nonexistent/syn.csv"), IoError);
}

TEST_CASE("duplicates") {
  const auto c = load_jsonl(fixtures::path("ubuntu/corpus.jsonl"));
  const auto pairs = load_duplicates(fixtures::path("ubuntu/duplicates.csv"), c);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == DuplicatePair{8, 2});
  CHECK_THROWS_AS(parse_duplicates("1,99\n", c), InvariantError);
  CHECK_THROWS_AS(parse_duplicates("1,11\n", c), InvariantError);  // 11 is an answer
  CHECK_THROWS_AS(parse_duplicates("3,3\n", c), InvariantError);
  CHECK_THROWS_AS(parse_duplicates("3;4\n", c), ParseError);
}

TEST_CASE("loading is deterministic") {
  const auto a = load_jsonl(fixtures::path("synthetic/corpus.jsonl"));
  const auto b = load_jsonl(fixtures::path("synthetic/corpus.jsonl"));
  CHECK(a == b);
}

}
