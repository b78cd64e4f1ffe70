#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vaguecam/lexicon.hpp"
#include "vaguecam/textproc.hpp"

namespace vaguecam {

// Exact ratio; value() is the double approximation.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / den; }
  bool is_positive() const { return num > 0; }
  // Equality of the rational values, not the representation.
  bool same_value(std::int64_t n, std::int64_t d) const { return num * d == n * den; }
};

struct ScoringOptions {
  // Count punctuation tokens in the sentence word count.
  bool count_punctuation = false;
  // Count each trigger occurrence; when false, a surface repeated in one
  // sentence counts once per category.
  bool per_occurrence = true;
};

struct TriggerMatch {
  std::string surface;  // lexicon surface form
  VaguenessCategory category = VaguenessCategory::kCombinatorial;
  std::size_t token_start = 0;  // index into the sentence's tokens
  std::size_t token_length = 0;
  std::size_t sentence_index = 0;
  Span span;  // bytes in the source text
};

struct SentenceAnalysis {
  Span span;
  std::size_t n_words = 0;
  CategoryCounts counts{};
  Ratio r_vague;
  Ratio r_subjective;
  std::vector<TriggerMatch> triggers;
};

struct TextReport {
  Language language = Language::kEnglish;
  std::size_t n_sentences = 0;
  std::vector<SentenceAnalysis> sentences;
  Ratio r_vague;
  Ratio r_subjective;

  std::size_t trigger_count() const;
};

struct Barometers {
  int vague_pct = 0;
  int opinion_pct = 0;
};

// Left-to-right leftmost-longest scan; tokens consumed by a multi-word match
// are not matched again. Throws Error(kEmptySentence) without word tokens.
SentenceAnalysis score_sentence(const Sentence& sentence, const Lexicon& lexicon,
                                const ScoringOptions& options = {},
                                std::size_t sentence_index = 0);

// Sentences made only of punctuation are skipped. Throws Error(kEmptyText)
// when nothing scorable remains.
TextReport score_text(std::string_view text, const Lexicon& lexicon,
                      const ScoringOptions& options = {});

// Percentages rounded half-up.
Barometers barometer_summary(const TextReport& report);

nlohmann::json to_json(const Ratio& r);
nlohmann::json to_json(const TextReport& report, std::string_view text);

}  // namespace vaguecam
