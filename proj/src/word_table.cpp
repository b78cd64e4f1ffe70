#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "vaguecam/analysis.hpp"
#include "vaguecam/error.hpp"
#include "vaguecam/unicode.hpp"

namespace vaguecam {

std::string_view pos_name(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::kAdjective: return "adj";
    case PartOfSpeech::kAdverb: return "adv";
    case PartOfSpeech::kOther: return "other";
  }
  return "other";
}

std::optional<PartOfSpeech> parse_pos(std::string_view name) {
  const std::string s = unicode::to_lower(name);
  if (s == "adj" || s == "adj." || s == "adjective" || s == "jj") return PartOfSpeech::kAdjective;
  if (s == "adv" || s == "adv." || s == "adverb" || s == "rb") return PartOfSpeech::kAdverb;
  if (s == "other" || s == "noun" || s == "verb" || s == "modal" || s == "det" ||
      s == "determiner" || s == "prep" || s == "nn" || s == "vb" || s == "md") {
    return PartOfSpeech::kOther;
  }
  return std::nullopt;
}

namespace {

const std::unordered_set<std::string>& closed_class() {
  static const std::unordered_set<std::string> kWords = {
      // function words
      "a", "an", "the", "this", "that", "these", "those", "and", "or", "but", "nor", "so",
      "of", "in", "on", "at", "to", "for", "by", "with", "from", "into", "over", "under",
      "he", "she", "it", "they", "we", "you", "i", "him", "her", "them", "us", "his", "its",
      "their", "our", "your", "my", "is", "are", "was", "were", "be", "been", "being", "has",
      "have", "had", "do", "does", "did", "will", "would", "shall", "should", "can", "could",
      "may", "might", "must", "not", "no", "as", "if", "than", "then", "when", "while",
      // "-ly" words that are not adverbs
      "only", "family", "early", "reply", "supply", "apply", "july", "italy", "ally", "rally",
      "belly", "fly", "holy", "assembly", "anomaly", "monopoly", "butterfly", "lily", "bully",
      // "-al"/"-ic"/"-ive" nouns
      "hospital", "capital", "animal", "signal", "festival", "proposal", "approval",
      "arrival", "journal", "council", "trial", "rival", "survival", "referral", "material",
      "music", "traffic", "topic", "clinic", "logic", "republic", "panic", "fabric", "magic",
      "archive", "motive", "objective", "executive", "detective", "native", "relative",
      "table", "cable", "vegetable", "label", "fable", "ally", "tablet"};
  return kWords;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

PartOfSpeech heuristic_pos(std::string_view lowered_word) {
  if (lowered_word.size() < 4) return PartOfSpeech::kOther;
  if (closed_class().count(std::string(lowered_word))) return PartOfSpeech::kOther;
  if (ends_with(lowered_word, "ly")) return PartOfSpeech::kAdverb;
  for (std::string_view suffix : {"ous", "ful", "ive", "able", "ic", "al", "ish", "less"}) {
    if (ends_with(lowered_word, suffix)) return PartOfSpeech::kAdjective;
  }
  return PartOfSpeech::kOther;
}

PosAnnotations load_pos_annotations(std::string_view content) {
  PosAnnotations out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::kParse, "annotations line " + std::to_string(line_no) +
                                         ": expected word<TAB>pos");
    }
    auto tag = parse_pos(line.substr(tab + 1));
    if (!tag) {
      throw Error(ErrorCode::kParse, "annotations line " + std::to_string(line_no) +
                                         ": unknown part of speech");
    }
    out[unicode::to_lower(line.substr(0, tab))] = *tag;
  }
  return out;
}

std::vector<WordScoreRow> word_cam_table(const ModelParams& params, const Corpus& corpus,
                                         const Lexicon& lexicon, const EmbeddingTable& table,
                                         const WordTableOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::kInvalidArgument, "word table corpus is empty");
  std::unordered_map<std::string, WordScoreRow> rows;
  for (const auto& doc : corpus.documents()) {
    const auto prediction = predict(params, doc.text, table);
    for (std::size_t t = 0; t < prediction.tokens.size(); ++t) {
      const Token& tok = prediction.tokens[t];
      if (tok.kind != TokenKind::kWord) continue;
      auto& row = rows[unicode::to_lower(tok.surface)];
      ++row.occurrences;
      row.cam_sum += prediction.cam.scores[t];
    }
  }

  std::vector<WordScoreRow> out;
  out.reserve(rows.size());
  for (auto& [word, row] : rows) {
    if (row.occurrences < options.min_occurrences) continue;
    row.word = word;
    row.avg_cam = row.cam_sum / static_cast<double>(row.occurrences);
    const LexiconEntry* entry = lexicon.find_word(word);
    if (entry) row.category = entry->category;
    std::optional<PartOfSpeech> pos;
    if (options.annotations) {
      if (auto it = options.annotations->find(word); it != options.annotations->end()) {
        pos = it->second;
      }
    }
    if (!pos && entry && entry->part_of_speech) pos = parse_pos(*entry->part_of_speech);
    row.pos = pos.value_or(heuristic_pos(word));
    if (options.adjectives_and_adverbs_only && row.pos == PartOfSpeech::kOther) continue;
    out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end(), [](const WordScoreRow& a, const WordScoreRow& b) {
    if (a.avg_cam != b.avg_cam) return a.avg_cam > b.avg_cam;
    return a.word < b.word;
  });
  return out;
}

std::vector<WordScoreRow> expansion_candidates(const std::vector<WordScoreRow>& table,
                                               std::size_t top_n) {
  std::vector<WordScoreRow> sorted = table;
  std::stable_sort(sorted.begin(), sorted.end(), [](const WordScoreRow& a, const WordScoreRow& b) {
    return a.avg_cam > b.avg_cam;
  });
  std::vector<WordScoreRow> out;
  for (const auto& row : sorted) {
    if (out.size() == top_n) break;
    if (row.category || row.pos == PartOfSpeech::kOther) continue;
    out.push_back(row);
  }
  return out;
}

std::string candidates_to_tsv(const std::vector<WordScoreRow>& candidates) {
  std::string out;
  char buf[128];
  for (const auto& row : candidates) {
    std::snprintf(buf, sizeof buf, "#proposed occ=%zu avg_cam=%.6f\n", row.occurrences,
                  row.avg_cam);
    out += buf;
    out += row.word + "\tVC\t" + std::string(pos_name(row.pos)) + "\n";
  }
  return out;
}

std::string format_word_table(const std::vector<WordScoreRow>& rows) {
  std::size_t width = 4;
  for (const auto& r : rows) width = std::max(width, unicode::length(r.word));
  auto pad = [](std::string s, std::size_t w) {
    const std::size_t len = unicode::length(s);
    if (len < w) s.append(w - len, ' ');
    return s;
  };
  std::string out = pad("word", width) + "  " + pad("occ", 7) + "  " + pad("avg", 10) + "  " +
                    pad("VAGO", 4) + "  part-of-speech\n";
  char num[32];
  for (const auto& r : rows) {
    out += pad(r.word, width) + "  ";
    std::snprintf(num, sizeof num, "%7zu", r.occurrences);
    out += std::string(num) + "  ";
    std::snprintf(num, sizeof num, "%10.4f", r.avg_cam);
    out += std::string(num) + "  ";
    out += pad(r.category ? std::string(category_tag(*r.category)) : "", 4) + "  ";
    out += std::string(pos_name(r.pos)) + "\n";
  }
  return out;
}

nlohmann::json to_json(const WordScoreRow& row) {
  nlohmann::json j = {{"word", row.word},
                      {"occ", row.occurrences},
                      {"avg", row.avg_cam},
                      {"pos", std::string(pos_name(row.pos))}};
  j["vago"] = row.category ? nlohmann::json(std::string(category_tag(*row.category)))
                           : nlohmann::json(nullptr);
  return j;
}

}  // namespace vaguecam
