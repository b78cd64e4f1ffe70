#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "vaguecam/error.hpp"
#include "vaguecam/random.hpp"
#include "vaguecam/scoring.hpp"
#include "vaguecam/unicode.hpp"

using namespace vaguecam;

namespace {

Sentence sentence_of(std::string_view text) {
  auto s = split_sentences(text);
  REQUIRE(s.size() == 1);
  return s[0];
}

// Leftmost-longest scan comparing every entry at every position.
CategoryCounts naive_counts(const std::vector<std::string>& words, const Lexicon& lex) {
  CategoryCounts counts{};
  std::size_t p = 0;
  while (p < words.size()) {
    std::size_t best = 0;
    const LexiconEntry* best_entry = nullptr;
    for (const auto& e : lex.entries()) {
      if (e.tokens.size() <= best || p + e.tokens.size() > words.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < e.tokens.size() && ok; ++k) {
        ok = unicode::to_lower(words[p + k]) == e.tokens[k];
      }
      if (ok) {
        best = e.tokens.size();
        best_entry = &e;
      }
    }
    if (best_entry) {
      ++counts[static_cast<std::size_t>(best_entry->category)];
      p += best;
    } else {
      ++p;
    }
  }
  return counts;
}

}  // namespace

TEST_SUITE("scoring") {

TEST_CASE("precise sentence") {
  const auto a = score_sentence(sentence_of("Two plus two equals four"), vctest::seed_en());
  CHECK(a.r_vague.num == 0);
  CHECK(a.r_subjective.num == 0);
  CHECK(a.triggers.empty());
  CHECK(a.n_words == 5);
}

TEST_CASE("approximation sentence") {
  const auto a = score_sentence(sentence_of("Mary left Paris around 2pm"), vctest::seed_en());
  REQUIRE(a.triggers.size() == 1);
  CHECK(a.triggers[0].surface == "around");
  CHECK(a.triggers[0].category == VaguenessCategory::kApproximation);
  CHECK(a.n_words == 5);
  CHECK(a.r_vague.same_value(1, 5));
  CHECK(a.r_vague.value() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(a.r_subjective.num == 0);
}

TEST_CASE("mixed sentence") {
  const auto a = score_sentence(
      sentence_of("Most sensational news articles are sometimes hard to believe"), vctest::seed_en());
  REQUIRE(a.triggers.size() == 4);
  const std::vector<std::pair<std::string, VaguenessCategory>> expected{
      {"most", VaguenessCategory::kGenerality},
      {"sensational", VaguenessCategory::kCombinatorial},
      {"sometimes", VaguenessCategory::kGenerality},
      {"hard", VaguenessCategory::kCombinatorial}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a.triggers[i].surface == expected[i].first);
    CHECK(a.triggers[i].category == expected[i].second);
  }
  CHECK(a.n_words == 9);
  CHECK(a.r_vague.same_value(4, 9));
  CHECK(a.r_subjective.same_value(2, 9));
}

TEST_CASE("empty sentence error") {
  Sentence s;
  s.tokens = tokenize("?!");
  try {
    score_sentence(s, vctest::seed_en());
    FAIL("expected EmptySentence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptySentence);
  }
}

TEST_CASE("toy text") {
  const auto r = score_text(vctest::kToyText, vctest::seed_en());
  CHECK(r.n_sentences == 3);
  CHECK(r.r_vague.same_value(2, 3));
  CHECK(r.r_subjective.same_value(1, 3));
  CHECK(r.r_vague.num == 2);
  CHECK(r.r_vague.den == 3);
  CHECK(r.trigger_count() == 5);
  const auto b = barometer_summary(r);
  CHECK(b.vague_pct == 67);
  CHECK(b.opinion_pct == 33);
}

TEST_CASE("text level examples") {
  const auto precise = score_text("Two plus two equals four.", vctest::seed_en());
  CHECK(precise.r_vague.num == 0);
  CHECK(precise.r_subjective.num == 0);
  CHECK(barometer_summary(precise).vague_pct == 0);

  std::string four;
  for (int i = 0; i < 4; ++i) four += "Mary left Paris around 2pm. ";
  const auto r = score_text(four, vctest::seed_en());
  CHECK(r.n_sentences == 4);
  CHECK(r.r_vague.same_value(1, 1));
  CHECK(r.r_subjective.num == 0);

  try {
    score_text("  ...  ", vctest::seed_en());
    FAIL("expected EmptyText");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyText);
  }
}

TEST_CASE("barometer rounding") {
  TextReport r;
  r.r_vague = {1, 1};
  r.r_subjective = {1, 1};
  CHECK(barometer_summary(r).vague_pct == 100);
  CHECK(barometer_summary(r).opinion_pct == 100);
  r.r_vague = {1, 200};  // 0.5 % rounds up
  r.r_subjective = {0, 5};
  CHECK(barometer_summary(r).vague_pct == 1);
  CHECK(barometer_summary(r).opinion_pct == 0);
  r.r_vague = {1, 8};  // 12.5 %
  CHECK(barometer_summary(r).vague_pct == 13);
}

TEST_CASE("multi-word trigger counts once and consumes its tokens") {
  const auto lex = load_lexicon("at least\tVG\nleast\tVC\n", Language::kEnglish);
  const auto a = score_sentence(sentence_of("At least three people came"), lex);
  REQUIRE(a.triggers.size() == 1);
  CHECK(a.triggers[0].token_length == 2);
  CHECK(a.counts[1] == 1);
  CHECK(a.counts[3] == 0);
  CHECK(a.r_vague.same_value(1, 5));
}

TEST_CASE("repetition and punctuation policies") {
  const auto s = sentence_of("Good, good and good.");
  const auto per = score_sentence(s, vctest::seed_en());
  CHECK(per.counts[3] == 3);
  CHECK(per.r_vague.same_value(3, 4));
  ScoringOptions once;
  once.per_occurrence = false;
  const auto one = score_sentence(s, vctest::seed_en(), once);
  CHECK(one.counts[3] == 1);
  CHECK(one.triggers.size() == 3);
  ScoringOptions punct;
  punct.count_punctuation = true;
  const auto p = score_sentence(s, vctest::seed_en(), punct);
  CHECK(p.n_words == 6);
  CHECK(p.r_vague.same_value(3, 6));
}

TEST_CASE("brute-force oracle on random sentences") {
  const auto& lex = vctest::seed_en();
  std::vector<std::string> vocab{"the",  "report", "said", "a",   "city", "at",    "least",
                                 "most", "good",   "tall", "Old", "some", "around", "ROUGHLY",
                                 "hard", "news",   "four", "two", "plus", "table", "left",
                                 "at",   "home",   "rich", "smart", "few", "days",  "near",
                                 "nearly", "massive"};
  REQUIRE(vocab.size() == 30);
  Rng rng(11);
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> words;
    const auto n = 1 + rng.uniform_index(15);
    for (std::size_t k = 0; k < n; ++k) words.push_back(vocab[rng.uniform_index(vocab.size())]);
    std::string text;
    for (const auto& w : words) text += (text.empty() ? "" : " ") + w;
    Sentence s;
    s.tokens = tokenize(text);
    s.span = {0, text.size()};
    const auto got = score_sentence(s, lex);
    const auto want = naive_counts(words, lex);
    if (got.counts != want) ++mismatches;
    const std::size_t vague = want[0] + want[1] + want[2] + want[3];
    CHECK(got.r_vague.same_value(static_cast<std::int64_t>(vague), static_cast<std::int64_t>(n)));
    CHECK(got.r_subjective.same_value(static_cast<std::int64_t>(want[2] + want[3]),
                                      static_cast<std::int64_t>(n)));
    CHECK(got.r_subjective.value() <= got.r_vague.value());
    CHECK((got.r_vague.num > 0) == !got.triggers.empty());
  }
  CHECK(mismatches == 0);
}

TEST_CASE("appending a subjective sentence never lowers the subjective count") {
  std::string text = "Two plus two equals four.";
  std::int64_t last = score_text(text, vctest::seed_en()).r_subjective.num;
  for (const char* add : {" Mary left around noon.", " The tall man left.", " Four is four.",
                          " Good news arrived."}) {
    text += add;
    const auto r = score_text(text, vctest::seed_en());
    CHECK(r.r_subjective.num >= last);
    CHECK(r.r_subjective.value() <= r.r_vague.value());
    last = r.r_subjective.num;
  }
}

TEST_CASE("report json") {
  const auto r = score_text(vctest::kToyText, vctest::seed_en());
  const auto j = to_json(r, vctest::kToyText);
  CHECK(j.at("language") == "EN");
  CHECK(j.at("n_sentences") == 3);
  CHECK(j.at("r_vague").at("num") == 2);
  CHECK(j.at("r_vague").at("den") == 3);
  CHECK(j.at("r_subjective").at("num") == 1);
  const auto& s0 = j.at("sentences").at(0);
  for (const char* key : {"text_span", "n_words", "triggers", "r_vague", "r_subjective"}) {
    CHECK(s0.contains(key));
  }
  const auto& t0 = s0.at("triggers").at(0);
  CHECK(t0.at("surface") == "most");
  CHECK(t0.at("category") == "VG");
  CHECK(t0.at("span").size() == 2);
  CHECK(to_json(score_text(vctest::kToyText, vctest::seed_en()), vctest::kToyText).dump() == j.dump());
}

TEST_CASE("french text uses the french lexicon") {
  const auto fr = load_lexicon_file(vctest::data_path("lexicon/seed.fr.tsv"));
  const auto r = score_text("Il est parti vers environ midi. Le film était beau.", fr);
  CHECK(r.language == Language::kFrench);
  CHECK(r.r_vague.same_value(2, 2));
  CHECK(r.r_subjective.same_value(1, 2));
}

}  // TEST_SUITE
