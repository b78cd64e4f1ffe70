#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vaguecam/classifier.hpp"
#include "vaguecam/corpus.hpp"
#include "vaguecam/embeddings.hpp"
#include "vaguecam/lexicon.hpp"
#include "vaguecam/metrics.hpp"
#include "vaguecam/scoring.hpp"

namespace vaguecam {

// ---------------------------------------------------------------------------
// Ingestion

enum class CorpusFormat { kJsonl, kCsv };

struct ColumnMap {
  std::string id = "id";
  std::string text = "text";
  std::string label = "label";
  std::string source = "source";
};

// One Document per record. Labels go through normalize_label; an unknown
// label is an error naming the record. Records with empty text are dropped
// and counted in Corpus::dropped_empty. Missing ids become "<row number>".
Corpus ingest_jsonl(std::string_view content, const ColumnMap& columns = {},
                    std::string_view default_source = "");
Corpus ingest_csv(std::string_view content, const ColumnMap& columns = {},
                  std::string_view default_source = "");
Corpus ingest_corpus(const std::string& path, CorpusFormat format, const ColumnMap& columns = {});

// RFC 4180 records (quoted fields may contain separators, quotes and newlines).
std::vector<std::vector<std::string>> parse_csv(std::string_view content);

// ---------------------------------------------------------------------------
// Splitting and evaluation

struct CorpusSplit {
  Corpus train;
  Corpus test;
};

// Rng(seed).shuffle over document indices, then the first ceil(n * fraction)
// shuffled documents form the test set and the rest the training set, both
// in shuffled order.
CorpusSplit split_corpus(const Corpus& corpus, double test_fraction, std::uint64_t seed);

// Nested order statistics. Depth of the median is (n + 1) / 2 and each next
// letter value has depth (1 + floor(previous depth)) / 2; a fractional depth
// averages the two neighbouring order statistics. This equals taking the
// median of each half, then of each quarter, and so on.
struct LetterValueSummary {
  std::size_t n = 0;
  double median = 0.0;
  std::pair<double, double> quartiles;    // (lower, upper)
  std::pair<double, double> octiles;
  std::pair<double, double> hexadeciles;
};

LetterValueSummary letter_values(std::vector<double> samples);
nlohmann::json to_json(const LetterValueSummary& s);

struct EvaluationReport {
  BinaryMetrics metrics;
  std::map<std::string, LetterValueSummary> score_by_source;
  std::vector<double> scores;  // bias_score per document, corpus order
};

// Threshold 0.5 on the biased-class probability. Throws Error(kUnlabeled)
// for a document without label.
EvaluationReport evaluate(const ModelParams& params, const Corpus& corpus,
                          const EmbeddingTable& table);

nlohmann::json to_json(const EvaluationReport& r);

// ---------------------------------------------------------------------------
// Correlation study

struct CorrelationReport {
  std::string variable_x;
  std::string variable_y;
  double r = 0.0;
  std::size_t n = 0;
};

// Product-moment coefficient with double accumulation. Throws
// Error(kDegenerateVariance) when either variable is constant.
CorrelationReport pearson(const std::vector<double>& xs, const std::vector<double>& ys,
                          std::string variable_x = "x", std::string variable_y = "y");

nlohmann::json to_json(const CorrelationReport& r);

struct StudyReport {
  CorrelationReport vague;               // predicted-biased indicator vs text vague ratio
  CorrelationReport subjective;          // indicator vs text subjective ratio
  CorrelationReport vague_continuous;    // bias score vs vague ratio
  CorrelationReport subjective_continuous;
  std::map<std::string, LetterValueSummary> vague_by_source;
  std::map<std::string, LetterValueSummary> subjective_by_source;
  std::size_t skipped_documents = 0;  // no scorable sentence
};

StudyReport vagueness_bias_study(const ModelParams& params, const Corpus& corpus,
                                 const Lexicon& lexicon, const EmbeddingTable& table);

nlohmann::json to_json(const StudyReport& r);

// ---------------------------------------------------------------------------
// Word-level CAM aggregation

enum class PartOfSpeech { kAdjective, kAdverb, kOther };

std::string_view pos_name(PartOfSpeech pos);
std::optional<PartOfSpeech> parse_pos(std::string_view name);

// Suffix rules: "-ly" adverbs; "-ous", "-ful", "-ive", "-able", "-ic", "-al",
// "-ish", "-less" adjectives; a closed-class and exception stoplist first.
PartOfSpeech heuristic_pos(std::string_view lowered_word);

// Per-corpus overrides, `word<TAB>pos` lines; they win over the lexicon's own
// part-of-speech field, which wins over the heuristic.
using PosAnnotations = std::unordered_map<std::string, PartOfSpeech>;
PosAnnotations load_pos_annotations(std::string_view content);

struct WordScoreRow {
  std::string word;  // lowercased surface
  std::size_t occurrences = 0;
  double cam_sum = 0.0;
  double avg_cam = 0.0;
  std::optional<VaguenessCategory> category;
  PartOfSpeech pos = PartOfSpeech::kOther;
};

struct WordTableOptions {
  std::size_t min_occurrences = 10;
  bool adjectives_and_adverbs_only = true;
  const PosAnnotations* annotations = nullptr;
};

// Biased-class CAM of every word token accumulated by lowercased surface,
// sorted by descending average (ties by word).
std::vector<WordScoreRow> word_cam_table(const ModelParams& params, const Corpus& corpus,
                                         const Lexicon& lexicon, const EmbeddingTable& table,
                                         const WordTableOptions& options = {});

// Highest-average rows that are adjectives or adverbs missing from the lexicon.
std::vector<WordScoreRow> expansion_candidates(const std::vector<WordScoreRow>& table,
                                               std::size_t top_n);

// Lexicon-format TSV proposing VC for each candidate, each preceded by a
// `#proposed` comment line.
std::string candidates_to_tsv(const std::vector<WordScoreRow>& candidates);

// Aligned text table: word, occ, avg, VAGO, part-of-speech.
std::string format_word_table(const std::vector<WordScoreRow>& rows);
nlohmann::json to_json(const WordScoreRow& row);

// ---------------------------------------------------------------------------
// Synthetic corpus

struct SyntheticSpec {
  std::size_t n_docs = 2000;
  double bias_fraction = 0.5;
  std::uint64_t seed = 42;

  std::vector<std::string> neutral_tokens;        // filler vocabulary
  std::vector<std::string> bias_lexicon_tokens;   // lexicon VC/VD entries planted in biased docs
  std::vector<std::string> bias_novel_tokens;     // non-lexicon bias markers
  std::vector<std::string> legit_tokens;          // markers planted in legitimate docs
  std::vector<std::string> factual_tokens;        // VA/VG entries, same rate in both classes

  std::size_t min_sentences = 4;
  std::size_t max_sentences = 8;
  std::size_t min_words = 6;
  std::size_t max_words = 12;

  double bias_rate_biased = 0.5;     // per sentence
  double bias_rate_legit = 0.05;
  double legit_rate_legit = 0.3;
  double legit_rate_biased = 0.03;
  double factual_rate = 0.3;

  // Fills the token sets left empty with the built-in defaults; the lexicon
  // supplies `lexicon_fraction` of its single-token VC entries.
  void fill_defaults(const Lexicon& lexicon, double lexicon_fraction = 0.5);
  // Throws Error(kInvalidArgument) for overlapping token sets or bad rates.
  void validate() const;
};

struct SyntheticCorpus {
  Corpus corpus;
  nlohmann::json manifest;  // spec, token sets and planted tokens per document
};

SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec);

}  // namespace vaguecam
