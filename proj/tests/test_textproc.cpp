#include <doctest.h>

#include "vaguecam/error.hpp"
#include "vaguecam/random.hpp"
#include "vaguecam/textproc.hpp"
#include "support.hpp"

using namespace vaguecam;

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) out.push_back(t.surface);
  return out;
}

std::size_t word_count(const std::vector<Token>& toks) {
  std::size_t n = 0;
  for (const auto& t : toks) n += t.counts_as_word();
  return n;
}

}  // namespace

TEST_SUITE("textproc") {

TEST_CASE("tokenize examples") {
  const auto a = tokenize("Mary left Paris around 2pm");
  CHECK(a.size() == 5);
  CHECK(word_count(a) == 5);
  CHECK(a[4].surface == "2pm");

  const auto b = tokenize("Most sensational news articles are sometimes hard to believe");
  CHECK(word_count(b) == 9);

  CHECK(surfaces(tokenize("hello, world!")) == std::vector<std::string>{"hello", ",", "world", "!"});
  const auto c = tokenize("hello, world!");
  CHECK(c[1].kind == TokenKind::kPunctuation);
  CHECK(c[0].kind == TokenKind::kWord);
}

TEST_CASE("hyphens, apostrophes and numbers") {
  CHECK(surfaces(tokenize("a well-known fact")) == std::vector<std::string>{"a", "well-known", "fact"});
  CHECK(surfaces(tokenize("don't stop")) == std::vector<std::string>{"don't", "stop"});
  CHECK(surfaces(tokenize("l’homme")) == std::vector<std::string>{"l’homme"});
  const auto n = tokenize("It cost 3,500.25 dollars.");
  CHECK(surfaces(n) == std::vector<std::string>{"It", "cost", "3,500.25", "dollars", "."});
  CHECK(n[2].kind == TokenKind::kNumber);
  CHECK(surfaces(tokenize("-- end -")) == std::vector<std::string>{"-", "-", "end", "-"});
}

TEST_CASE("empty input") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("   \n\t").empty());
  CHECK(split_sentences("").empty());
  CHECK(split_sentences("  \n ").empty());
}

TEST_CASE("spans reconstruct the input") {
  const std::vector<std::string> texts{
      "Mary left Paris around 2pm.", "  Il était   une fois, à Paris… «bien» !",
      "x-y, z'w; 12.5% (ok)", "Ünïcödé « test »\ttabs\nnewline"};
  for (const auto& text : texts) {
    const auto toks = tokenize(text);
    std::string rebuilt;
    std::size_t cursor = 0;
    for (const auto& t : toks) {
      REQUIRE(t.span.begin >= cursor);
      REQUIRE(t.span.end > t.span.begin);
      REQUIRE(t.span.end <= text.size());
      rebuilt += text.substr(cursor, t.span.begin - cursor);
      CHECK(text.substr(t.span.begin, t.span.size()) == t.surface);
      rebuilt += t.surface;
      cursor = t.span.end;
    }
    rebuilt += text.substr(cursor);
    CHECK(rebuilt == text);
  }
}

TEST_CASE("tokenize is idempotent on surfaces") {
  for (const auto& t : tokenize("The well-known 2pm meeting, 3.5 hours, l'avion!")) {
    const auto again = tokenize(t.surface);
    REQUIRE(again.size() == 1);
    CHECK(again[0].surface == t.surface);
    CHECK(again[0].kind == t.kind);
  }
}

TEST_CASE("offset shifts spans") {
  const auto toks = tokenize("ab cd", 10);
  CHECK(toks[1].span == Span{13, 15});
}

TEST_CASE("split_sentences examples") {
  CHECK(split_sentences("Two plus two equals four. Mary left.").size() == 2);
  const auto toy = split_sentences(vctest::kToyText);
  REQUIRE(toy.size() == 3);
  CHECK(toy[2].tokens.front().surface == "Mary");
}

TEST_CASE("abbreviations do not split") {
  CHECK(split_sentences("Mr. Smith met Dr. Jones. They left.").size() == 2);
  CHECK(split_sentences("Bring fruit, e.g. Apples and pears. Then go.").size() == 2);
  CHECK(split_sentences("Use tools, i.e. Hammers. Fine.").size() == 2);
  CHECK(split_sentences("We saw cats, dogs, etc. Nothing else.").size() == 1);
}

TEST_CASE("split rules") {
  CHECK(split_sentences("It works. really it does.").size() == 1);
  CHECK(split_sentences("Is it? Yes! 42 is the answer.").size() == 3);
  CHECK(split_sentences("He said \"stop.\" Then left.").size() == 2);
  CHECK(split_sentences("No terminator here").size() == 1);
  CHECK(split_sentences("First part\n\nSecond part").size() == 2);
  CHECK(split_sentences("Pi is 3.14 roughly.").size() == 1);
}

TEST_CASE("sentence spans cover all non-whitespace text") {
  Rng rng(3);
  const std::vector<std::string> pieces{"Mr.", "Alpha", "beta", "Gamma.", "delta!", "Eps?",
                                        "2pm", "e.g.", "zeta,", "\n\n", "Eta", "…", "\"Quote.\""};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const auto n = 1 + rng.uniform_index(20);
    for (std::size_t i = 0; i < n; ++i) {
      if (!text.empty()) text += ' ';
      text += pieces[rng.uniform_index(pieces.size())];
    }
    const auto sentences = split_sentences(text);
    std::string covered(text.size(), ' ');
    std::size_t last_end = 0;
    for (const auto& s : sentences) {
      REQUIRE_FALSE(s.tokens.empty());
      REQUIRE(s.span.begin >= last_end);
      last_end = s.span.end;
      for (std::size_t i = s.span.begin; i < s.span.end; ++i) covered[i] = text[i];
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char ch = text[i];
      if (ch != ' ' && ch != '\n') CHECK(covered[i] == ch);
    }
  }
}

TEST_CASE("detect_language") {
  const std::string en =
      "The city council approved the new budget on Tuesday after a long debate about schools, "
      "roads and the future of public transport, and the mayor said the plan would be reviewed "
      "again next spring by the full council and its finance committee.";
  REQUIRE(en.size() >= 200);
  const auto g = detect_language(en);
  CHECK(g.language == Language::kEnglish);
  CHECK(g.confidence > 0.5);
  CHECK(g.confidence <= 1.0);

  const auto f = detect_language(
      "Le président de la République a annoncé une réforme importante du système.");
  CHECK(f.language == Language::kFrench);
  CHECK(f.confidence > 0.5);

  CHECK_THROWS_AS(detect_language("ab"), Error);
  try {
    detect_language("ab");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInsufficientText);
  }
  const auto again = detect_language(en);
  CHECK(again.confidence == g.confidence);
  CHECK(again.distance_en == g.distance_en);
}

TEST_CASE("out-of-place distance") {
  const std::vector<std::u32string> lang{U"abc", U"bcd", U"cde"};
  CHECK(out_of_place_distance({U"abc", U"bcd"}, lang) == 0.0);
  CHECK(out_of_place_distance({U"bcd", U"abc"}, lang) == 2.0);
  CHECK(out_of_place_distance({U"zzz"}, lang) == 3.0);
  const auto p = trigram_profile("aaaa", 10);
  REQUIRE_FALSE(p.empty());
}

}  // TEST_SUITE
