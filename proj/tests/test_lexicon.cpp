#include <doctest.h>

#include <map>
#include <regex>

#include <nlohmann/json.hpp>

#include "support.hpp"
#include "vaguecam/error.hpp"
#include "vaguecam/lexicon.hpp"
#include "vaguecam/random.hpp"

using namespace vaguecam;

namespace {

ErrorCode load_error(const std::string& content, std::string* message = nullptr) {
  try {
    load_lexicon(content, Language::kEnglish);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kParse;
}

}  // namespace

TEST_SUITE("lexicon") {

TEST_CASE("subjective and factual split") {
  CHECK(is_factual(VaguenessCategory::kApproximation));
  CHECK(is_factual(VaguenessCategory::kGenerality));
  CHECK(is_subjective(VaguenessCategory::kDegreeVague));
  CHECK(is_subjective(VaguenessCategory::kCombinatorial));
  for (int c = 0; c < 4; ++c) {
    const auto cat = static_cast<VaguenessCategory>(c);
    CHECK(is_factual(cat) != is_subjective(cat));
    CHECK(parse_category_tag(category_tag(cat)) == cat);
  }
  CHECK_FALSE(parse_category_tag("VX").has_value());
}

TEST_CASE("four single entries") {
  const auto lex = load_lexicon("around\tVA\nsome\tVG\ntall\tVD\nsensational\tVC\n", Language::kEnglish);
  CHECK(lex.category_counts() == CategoryCounts{1, 1, 1, 1});
  CHECK(lex.size() == 4);
}

TEST_CASE("multi-word entry") {
  const auto lex = load_lexicon("at least\tVG\n", Language::kEnglish);
  REQUIRE(lex.size() == 1);
  CHECK(lex.entries()[0].tokens.size() == 2);
  CHECK(lex.entries()[0].category == VaguenessCategory::kGenerality);
}

TEST_CASE("empty lexicon counts") {
  const Lexicon lex;
  CHECK(lex.category_counts() == CategoryCounts{0, 0, 0, 0});
  const auto loaded = load_lexicon("# only a comment\n\n", Language::kFrench);
  CHECK(loaded.empty());
}

TEST_CASE("load errors") {
  std::string msg;
  CHECK(load_error("around\tVA\nbroken line\n", &msg) == ErrorCode::kParse);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(load_error("# c\naround\tVQ\n", &msg) == ErrorCode::kUnknownCategory);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(load_error("around\tVA\nAround\tVA\n", &msg) == ErrorCode::kDuplicateEntry);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(load_error("a b c d e f\tVC\n") == ErrorCode::kParse);
  CHECK(load_error("x\tVC\tadj\textra\n") == ErrorCode::kParse);
}

TEST_CASE("lookup_longest examples") {
  const auto& lex = vctest::seed_en();
  const std::vector<std::string> a{"around", "2pm"};
  auto m = lex.lookup_longest(a, 0);
  REQUIRE(m);
  CHECK(m->entry->surface() == "around");
  CHECK(m->entry->category == VaguenessCategory::kApproximation);
  CHECK(m->length == 1);

  const std::vector<std::string> b{"at", "least", "three"};
  m = lex.lookup_longest(b, 0);
  REQUIRE(m);
  CHECK(m->entry->surface() == "at least");
  CHECK(m->length == 2);

  const std::vector<std::string> c{"table"};
  CHECK_FALSE(lex.lookup_longest(c, 0));
}

TEST_CASE("lookup is case-insensitive") {
  const auto& lex = vctest::seed_en();
  const std::vector<std::string> toks{"At", "LEAST"};
  auto m = lex.lookup_longest(toks, 0);
  REQUIRE(m);
  CHECK(m->length == 2);
}

TEST_CASE("longest match dominates") {
  const auto lex = load_lexicon("most\tVG\nat most\tVG\nat\tVA\n", Language::kEnglish);
  const std::vector<std::string> toks{"at", "most"};
  auto m = lex.lookup_longest(toks, 0);
  REQUIRE(m);
  CHECK(m->length == 2);
  const std::vector<std::string> lone{"at", "home"};
  m = lex.lookup_longest(lone, 0);
  REQUIRE(m);
  CHECK(m->length == 1);
}

TEST_CASE("matched tokens equal entry surface") {
  const auto& lex = vctest::seed_en();
  const std::vector<std::string> vocab{"at", "least", "most", "Some", "tall", "table", "the",
                                       "around", "ROUGHLY", "good", "news", "Hard"};
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> toks;
    for (int i = 0; i < 6; ++i) toks.push_back(vocab[rng.uniform_index(vocab.size())]);
    for (std::size_t p = 0; p < toks.size(); ++p) {
      auto m = lex.lookup_longest(toks, p);
      if (!m) continue;
      REQUIRE(p + m->length <= toks.size());
      for (std::size_t k = 0; k < m->length; ++k) {
        std::string lowered = toks[p + k];
        for (auto& ch : lowered) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        CHECK(lowered == m->entry->tokens[k]);
      }
    }
  }
}

TEST_CASE("tsv round trip") {
  const auto& lex = vctest::seed_en();
  const auto again = load_lexicon(lex.to_tsv(), Language::kEnglish);
  CHECK(again == lex);
  const auto fr = load_lexicon_file(vctest::data_path("lexicon/seed.fr.tsv"));
  CHECK(fr.language() == Language::kFrench);
  CHECK(load_lexicon(fr.to_tsv(), Language::kFrench) == fr);
}

TEST_CASE("language from filename") {
  CHECK(language_from_filename("x/full.en.tsv") == Language::kEnglish);
  CHECK(language_from_filename("seed.fr.tsv") == Language::kFrench);
  CHECK_FALSE(language_from_filename("seed.tsv").has_value());
}

TEST_CASE("seed lexicon counts match manifest and a text scan") {
  for (const char* name : {"seed.en.tsv", "seed.fr.tsv"}) {
    const std::string content = vctest::slurp(vctest::data_path(std::string("lexicon/") + name));
    std::map<std::string, std::size_t> scanned;
    std::size_t total = 0;
    const std::regex line_re(R"((^|\n)[^#\n][^\t\n]*\t(VA|VG|VD|VC)\b)");
    for (auto it = std::sregex_iterator(content.begin(), content.end(), line_re);
         it != std::sregex_iterator(); ++it) {
      ++scanned[(*it)[2]];
      ++total;
    }
    const auto lex = load_lexicon_file(vctest::data_path(std::string("lexicon/") + name));
    const auto counts = lex.category_counts();
    CHECK(counts[0] == scanned["VA"]);
    CHECK(counts[1] == scanned["VG"]);
    CHECK(counts[2] == scanned["VD"]);
    CHECK(counts[3] == scanned["VC"]);
    CHECK(lex.size() == total);

    const auto manifest =
        nlohmann::json::parse(vctest::slurp(vctest::data_path("lexicon/seed.manifest.json")));
    const auto& m = manifest.at(name);
    CHECK(m.at("entries").get<std::size_t>() == total);
    for (const char* tag : {"VA", "VG", "VD", "VC"}) {
      CHECK(m.at("counts").at(tag).get<std::size_t>() == scanned[tag]);
    }
  }
}

TEST_CASE("should is a modal VC entry") {
  const auto* e = vctest::seed_en().find_word("should");
  REQUIRE(e);
  CHECK(e->category == VaguenessCategory::kCombinatorial);
  CHECK(e->part_of_speech == "modal");
}

}  // TEST_SUITE
