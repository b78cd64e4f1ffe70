#include "vaguecam/scoring.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "vaguecam/error.hpp"

namespace vaguecam {

std::size_t TextReport::trigger_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.triggers.size();
  return n;
}

SentenceAnalysis score_sentence(const Sentence& sentence, const Lexicon& lexicon,
                                const ScoringOptions& options, std::size_t sentence_index) {
  SentenceAnalysis out;
  out.span = sentence.span;
  for (const auto& tok : sentence.tokens) {
    if (tok.counts_as_word() || options.count_punctuation) ++out.n_words;
  }
  const bool has_word = std::any_of(sentence.tokens.begin(), sentence.tokens.end(),
                                    [](const Token& t) { return t.counts_as_word(); });
  if (!has_word) throw Error(ErrorCode::kEmptySentence, "sentence has no word tokens");

  std::vector<std::string> surfaces;
  surfaces.reserve(sentence.tokens.size());
  for (const auto& tok : sentence.tokens) surfaces.push_back(tok.surface);

  std::set<std::pair<std::string, VaguenessCategory>> seen;
  std::size_t pos = 0;
  while (pos < surfaces.size()) {
    if (sentence.tokens[pos].kind == TokenKind::kPunctuation) {
      ++pos;
      continue;
    }
    auto match = lexicon.lookup_longest(surfaces, pos);
    if (!match) {
      ++pos;
      continue;
    }
    TriggerMatch trig;
    trig.surface = match->entry->surface();
    trig.category = match->entry->category;
    trig.token_start = pos;
    trig.token_length = match->length;
    trig.sentence_index = sentence_index;
    trig.span = {sentence.tokens[pos].span.begin,
                 sentence.tokens[pos + match->length - 1].span.end};
    const bool first_time = seen.emplace(trig.surface, trig.category).second;
    if (options.per_occurrence || first_time) {
      ++out.counts[static_cast<std::size_t>(trig.category)];
    }
    out.triggers.push_back(std::move(trig));
    pos += match->length;
  }

  const auto den = static_cast<std::int64_t>(out.n_words);
  std::int64_t vague = 0;
  std::int64_t subjective = 0;
  for (std::size_t c = 0; c < kNumCategories; ++c) {
    const auto n = static_cast<std::int64_t>(out.counts[c]);
    vague += n;
    if (is_subjective(static_cast<VaguenessCategory>(c))) subjective += n;
  }
  out.r_vague = {vague, den};
  out.r_subjective = {subjective, den};
  return out;
}

TextReport score_text(std::string_view text, const Lexicon& lexicon,
                      const ScoringOptions& options) {
  TextReport report;
  report.language = lexicon.language();
  std::int64_t vague_sentences = 0;
  std::int64_t subjective_sentences = 0;
  for (const auto& sentence : split_sentences(text)) {
    const bool has_word = std::any_of(sentence.tokens.begin(), sentence.tokens.end(),
                                      [](const Token& t) { return t.counts_as_word(); });
    if (!has_word) continue;
    auto analysis = score_sentence(sentence, lexicon, options, report.sentences.size());
    if (analysis.r_vague.is_positive()) ++vague_sentences;
    if (analysis.r_subjective.is_positive()) ++subjective_sentences;
    report.sentences.push_back(std::move(analysis));
  }
  if (report.sentences.empty()) throw Error(ErrorCode::kEmptyText, "text has no sentences");
  report.n_sentences = report.sentences.size();
  const auto n = static_cast<std::int64_t>(report.n_sentences);
  report.r_vague = {vague_sentences, n};
  report.r_subjective = {subjective_sentences, n};
  return report;
}

namespace {

// round(100 * num / den), halves rounded up, in integer arithmetic.
int percent_half_up(const Ratio& r) {
  if (r.den <= 0) return 0;
  return static_cast<int>((200 * r.num + r.den) / (2 * r.den));
}

}  // namespace

Barometers barometer_summary(const TextReport& report) {
  return {percent_half_up(report.r_vague), percent_half_up(report.r_subjective)};
}

nlohmann::json to_json(const Ratio& r) {
  return {{"num", r.num}, {"den", r.den}, {"value", r.value()}};
}

nlohmann::json to_json(const TextReport& report, std::string_view text) {
  nlohmann::json sentences = nlohmann::json::array();
  for (const auto& s : report.sentences) {
    nlohmann::json triggers = nlohmann::json::array();
    for (const auto& t : s.triggers) {
      triggers.push_back({{"surface", t.surface},
                          {"text", std::string(text.substr(t.span.begin, t.span.size()))},
                          {"category", std::string(category_tag(t.category))},
                          {"span", {t.span.begin, t.span.end}},
                          {"token_span", {t.token_start, t.token_length}}});
    }
    nlohmann::json counts;
    for (std::size_t c = 0; c < kNumCategories; ++c) {
      counts[std::string(category_tag(static_cast<VaguenessCategory>(c)))] = s.counts[c];
    }
    sentences.push_back({{"text_span", {s.span.begin, s.span.end}},
                         {"text", std::string(text.substr(s.span.begin, s.span.size()))},
                         {"n_words", s.n_words},
                         {"counts", counts},
                         {"triggers", triggers},
                         {"r_vague", to_json(s.r_vague)},
                         {"r_subjective", to_json(s.r_subjective)}});
  }
  return {{"language", std::string(language_tag(report.language))},
          {"n_sentences", report.n_sentences},
          {"r_vague", to_json(report.r_vague)},
          {"r_subjective", to_json(report.r_subjective)},
          {"sentences", sentences}};
}

}  // namespace vaguecam
