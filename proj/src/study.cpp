#include <algorithm>
#include <cmath>

#include "vaguecam/analysis.hpp"
#include "vaguecam/error.hpp"
#include "vaguecam/random.hpp"

namespace vaguecam {

CorpusSplit split_corpus(const Corpus& corpus, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "test fraction must lie strictly between 0 and 1");
  }
  const std::size_t n = corpus.size();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two documents to split");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  auto n_test = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * test_fraction - 1e-9));
  n_test = std::clamp<std::size_t>(n_test, 1, n - 1);
  CorpusSplit split;
  for (std::size_t i = 0; i < n; ++i) {
    (i < n_test ? split.test : split.train).add(corpus[order[i]]);
  }
  return split;
}

namespace {

// Order statistic at a 1-based depth, averaging neighbours for x.5 depths.
double at_depth(const std::vector<double>& sorted, double depth) {
  const auto lo = static_cast<std::size_t>(std::floor(depth));
  const auto hi = static_cast<std::size_t>(std::ceil(depth));
  return 0.5 * (sorted[lo - 1] + sorted[hi - 1]);
}

}  // namespace

LetterValueSummary letter_values(std::vector<double> samples) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidArgument, "letter values need samples");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  LetterValueSummary s;
  s.n = n;
  double depth = (1.0 + static_cast<double>(n)) / 2.0;
  s.median = at_depth(samples, depth);
  std::pair<double, double>* levels[] = {&s.quartiles, &s.octiles, &s.hexadeciles};
  for (auto* level : levels) {
    depth = (1.0 + std::floor(depth)) / 2.0;
    level->first = at_depth(samples, depth);
    level->second = at_depth(samples, static_cast<double>(n) + 1.0 - depth);
  }
  return s;
}

nlohmann::json to_json(const LetterValueSummary& s) {
  return {{"n", s.n},
          {"median", s.median},
          {"quartiles", {s.quartiles.first, s.quartiles.second}},
          {"octiles", {s.octiles.first, s.octiles.second}},
          {"hexadeciles", {s.hexadeciles.first, s.hexadeciles.second}}};
}

namespace {

std::map<std::string, LetterValueSummary> summarize_by_source(
    const Corpus& corpus, const std::vector<double>& values,
    const std::vector<std::size_t>& doc_index) {
  std::map<std::string, std::vector<double>> grouped;
  for (std::size_t i = 0; i < values.size(); ++i) {
    grouped[corpus[doc_index[i]].source].push_back(values[i]);
  }
  std::map<std::string, LetterValueSummary> out;
  for (auto& [source, xs] : grouped) out.emplace(source, letter_values(std::move(xs)));
  return out;
}

}  // namespace

EvaluationReport evaluate(const ModelParams& params, const Corpus& corpus,
                          const EmbeddingTable& table) {
  EvaluationReport report;
  std::vector<bool> predicted;
  std::vector<bool> actual;
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& doc = corpus[i];
    if (!doc.label) throw Error(ErrorCode::kUnlabeled, "document '" + doc.id + "' has no label");
    const double score = predict(params, doc.text, table).bias_score;
    report.scores.push_back(score);
    predicted.push_back(score >= 0.5);
    actual.push_back(*doc.label == Label::kBiased);
    index.push_back(i);
  }
  report.metrics = binary_metrics(predicted, actual);
  if (!report.scores.empty()) report.score_by_source = summarize_by_source(corpus, report.scores, index);
  return report;
}

nlohmann::json to_json(const EvaluationReport& r) {
  nlohmann::json by_source = nlohmann::json::object();
  for (const auto& [source, summary] : r.score_by_source) by_source[source] = to_json(summary);
  return {{"f1", r.metrics.f1()},
          {"precision", r.metrics.precision()},
          {"recall", r.metrics.recall()},
          {"accuracy", r.metrics.accuracy()},
          {"n", r.scores.size()},
          {"score_by_source", by_source}};
}

CorrelationReport pearson(const std::vector<double>& xs, const std::vector<double>& ys,
                          std::string variable_x, std::string variable_y) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kShapeMismatch, "pearson: samples have different lengths");
  }
  const std::size_t n = xs.size();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "pearson: need at least two samples");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kDegenerateVariance,
                "pearson: zero variance in " + (sxx == 0.0 ? variable_x : variable_y));
  }
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return {std::move(variable_x), std::move(variable_y), r, n};
}

nlohmann::json to_json(const CorrelationReport& r) {
  return {{"x", r.variable_x}, {"y", r.variable_y}, {"r", r.r}, {"n", r.n}};
}

StudyReport vagueness_bias_study(const ModelParams& params, const Corpus& corpus,
                                 const Lexicon& lexicon, const EmbeddingTable& table) {
  if (corpus.empty()) throw Error(ErrorCode::kInvalidArgument, "study corpus is empty");
  std::vector<double> indicator;
  std::vector<double> score;
  std::vector<double> vague;
  std::vector<double> subjective;
  std::vector<std::size_t> index;
  StudyReport report;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& doc = corpus[i];
    TextReport text_report;
    try {
      text_report = score_text(doc.text, lexicon);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyText) throw;
      ++report.skipped_documents;
      continue;
    }
    const double bias = predict(params, doc.text, table).bias_score;
    indicator.push_back(bias >= 0.5 ? 1.0 : 0.0);
    score.push_back(bias);
    vague.push_back(text_report.r_vague.value());
    subjective.push_back(text_report.r_subjective.value());
    index.push_back(i);
  }
  report.vague = pearson(indicator, vague, "predicted_biased", "vague_sentence_ratio");
  report.subjective = pearson(indicator, subjective, "predicted_biased", "subjective_sentence_ratio");
  report.vague_continuous = pearson(score, vague, "bias_score", "vague_sentence_ratio");
  report.subjective_continuous =
      pearson(score, subjective, "bias_score", "subjective_sentence_ratio");
  report.vague_by_source = summarize_by_source(corpus, vague, index);
  report.subjective_by_source = summarize_by_source(corpus, subjective, index);
  return report;
}

nlohmann::json to_json(const StudyReport& r) {
  nlohmann::json vague_src = nlohmann::json::object();
  nlohmann::json subj_src = nlohmann::json::object();
  for (const auto& [k, v] : r.vague_by_source) vague_src[k] = to_json(v);
  for (const auto& [k, v] : r.subjective_by_source) subj_src[k] = to_json(v);
  return {{"vague", to_json(r.vague)},
          {"subjective", to_json(r.subjective)},
          {"vague_continuous", to_json(r.vague_continuous)},
          {"subjective_continuous", to_json(r.subjective_continuous)},
          {"vague_by_source", vague_src},
          {"subjective_by_source", subj_src},
          {"skipped_documents", r.skipped_documents}};
}

}  // namespace vaguecam
