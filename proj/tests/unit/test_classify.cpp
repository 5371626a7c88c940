#include <doctest.h>

#include <fstream>

#include "fixtures.hpp"
#include "tuxqa/classify.hpp"
#include "tuxqa/errors.hpp"

using namespace tuxqa;

namespace {

QueryCategory category_of(std::string_view text) {
  return classify(Analyzer::bundled().analyze(text), NegativeLexicon::bundled());
}

bool negated(std::string_view text) { return detect_negation(Analyzer::bundled().analyze(text)); }

bool negative(std::string_view text) {
  return contains_negative_word(Analyzer::bundled().analyze(text), NegativeLexicon::bundled());
}

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("negation") {
  CHECK(negated("My Ubuntu does not boot when installed with Windows"));
  CHECK_FALSE(negated("How do I install Ubuntu on Windows?"));
  CHECK(negated("grub won't load"));
  CHECK(negated("it just isn't working"));
  CHECK(negated("hibernate hasn't worked since 18.04"));  // clitic suffix outside the marker list
  CHECK(negated("wifi doesn\xE2\x80\x99t connect"));       // typographic apostrophe
  CHECK(negated("NOTHING happens"));
  CHECK_FALSE(negated(""));
  CHECK_FALSE(negated("notification sounds"));  // whole tokens only
}

TEST_CASE("negative lexicon") {
  CHECK(negative("wifi keeps crashing after update"));
  CHECK_FALSE(negative("install latest kernel"));
  CHECK_FALSE(contains_negative_word({}, NegativeLexicon::bundled()));
  CHECK(NegativeLexicon::bundled().contains("freezes"));
  CHECK(NegativeLexicon::bundled().contains("freeze"));
  CHECK(NegativeLexicon::bundled().contains("crash"));
}

TEST_CASE("classify the reference sentences") {
  CHECK(category_of("How do I install Ubuntu on Windows?") == QueryCategory::Factual);
  CHECK(category_of("My Ubuntu does not boot when installed with Windows") == QueryCategory::Troubleshooting);
  CHECK(category_of("screen freezes on login") == QueryCategory::Troubleshooting);
  CHECK(category_of("") == QueryCategory::Factual);
}

TEST_CASE("hand-labelled regression set") {
  std::ifstream in(fixtures::path("classification.csv"));
  REQUIRE(in);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.rfind(',');
    auto text = line.substr(0, comma);
    if (text.size() >= 2 && text.front() == '"') text = text.substr(1, text.size() - 2);
    const auto label = parse_category(line.substr(comma + 1));
    REQUIRE(label.has_value());
    INFO(text);
    CHECK(category_of(text) == *label);
    ++rows;
  }
  CHECK(rows >= 22);
}

TEST_CASE("property: case-insensitive") {
  for (std::string s : {"My Ubuntu does not boot", "Firefox CRASHES on start", "how to install grub"}) {
    std::string upper = s;
    for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    CHECK(category_of(s) == category_of(upper));
    CHECK(category_of(s) == category_of(to_lower(s)));
  }
}

TEST_CASE("property: adding a negative word never flips back to factual") {
  const std::vector<std::string> bases{"How do I install Ubuntu on Windows?", "configure the printer",
                                       "Sound is not working", "update python"};
  const std::vector<std::string> additions{"broken", "not", "error", "can't", "freezes"};
  for (const auto& b : bases) {
    for (const auto& a : additions) {
      CHECK(category_of(b + " " + a) == QueryCategory::Troubleshooting);
      CHECK(category_of(a + " " + b) == QueryCategory::Troubleshooting);
    }
  }
}

TEST_CASE("property: exhaustive small sentences") {
  const std::vector<std::string> words{"install", "not", "broken", "Wifi", "can't", "the", "hasn't", "freeze", "ok"};
  const auto& analyzer = Analyzer::bundled();
  const auto& lex = NegativeLexicon::bundled();
  std::vector<std::string> sentences{""};
  for (int len = 0; len < 3; ++len) {
    std::vector<std::string> longer;
    for (const auto& s : sentences) {
      for (const auto& w : words) longer.push_back(s.empty() ? w : s + " " + w);
    }
    sentences.insert(sentences.end(), longer.begin(), longer.end());
  }
  for (const auto& s : sentences) {
    const auto tokens = analyzer.analyze(s);
    const bool expected = detect_negation(tokens) || contains_negative_word(tokens, lex);
    CHECK((classify(tokens, lex) == QueryCategory::Troubleshooting) == expected);
    if (expected) {
      for (const auto& w : words) CHECK(category_of(s + " " + w) == QueryCategory::Troubleshooting);
    }
  }
}

TEST_CASE("category names") {
  CHECK(to_string(QueryCategory::Factual) == "factual");
  CHECK(to_string(QueryCategory::Troubleshooting) == "troubleshooting");
  CHECK(parse_category("troubleshooting") == QueryCategory::Troubleshooting);
  CHECK_FALSE(parse_category("Factual").has_value());
}

TEST_CASE("lexicon validation") {
  CHECK_THROWS_AS(NegativeLexicon({}), InvariantError);
  CHECK_THROWS_AS(NegativeLexicon({"Broken"}), InvariantError);
  CHECK_THROWS_AS(NegativeLexicon({"two words"}), InvariantError);
  const auto lex = parse_negative_lexicon("# c\nbroken\n\nbad\n");
  CHECK(lex.words() == std::set<std::string>{"bad", "broken"});
  CHECK_THROWS_AS(load_negative_lexicon("/nonexistent"), IoError);
}

}
