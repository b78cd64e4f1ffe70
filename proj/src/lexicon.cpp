#include "vaguecam/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "vaguecam/error.hpp"
#include "vaguecam/unicode.hpp"

namespace vaguecam {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kUnknownCategory: return "UnknownCategory";
    case ErrorCode::kDuplicateEntry: return "DuplicateEntry";
    case ErrorCode::kInsufficientText: return "InsufficientText";
    case ErrorCode::kEmptySentence: return "EmptySentence";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDegenerateVariance: return "DegenerateVariance";
    case ErrorCode::kCheckpoint: return "CheckpointError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kUnlabeled: return "Unlabeled";
  }
  return "Unknown";
}

std::string_view category_tag(VaguenessCategory c) {
  switch (c) {
    case VaguenessCategory::kApproximation: return "VA";
    case VaguenessCategory::kGenerality: return "VG";
    case VaguenessCategory::kDegreeVague: return "VD";
    case VaguenessCategory::kCombinatorial: return "VC";
  }
  return "??";
}

std::optional<VaguenessCategory> parse_category_tag(std::string_view tag) {
  if (tag == "VA") return VaguenessCategory::kApproximation;
  if (tag == "VG") return VaguenessCategory::kGenerality;
  if (tag == "VD") return VaguenessCategory::kDegreeVague;
  if (tag == "VC") return VaguenessCategory::kCombinatorial;
  return std::nullopt;
}

std::string_view language_tag(Language lang) {
  return lang == Language::kEnglish ? "EN" : "FR";
}

std::optional<Language> parse_language_tag(std::string_view tag) {
  std::string lower = unicode::to_lower(tag);
  if (lower == "en") return Language::kEnglish;
  if (lower == "fr") return Language::kFrench;
  return std::nullopt;
}

std::string LexiconEntry::surface() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

void Lexicon::add(LexiconEntry entry) {
  if (entry.tokens.empty() || entry.tokens.size() > kMaxEntryTokens) {
    throw Error(ErrorCode::kInvalidArgument,
                "lexicon entry must have 1.." + std::to_string(kMaxEntryTokens) + " tokens");
  }
  for (auto& tok : entry.tokens) {
    if (tok.empty()) throw Error(ErrorCode::kInvalidArgument, "empty token in lexicon entry");
    tok = unicode::to_lower(tok);
  }
  auto& bucket = by_first_[entry.tokens.front()];
  for (std::size_t idx : bucket) {
    if (entries_[idx].tokens == entry.tokens && entries_[idx].language == entry.language) {
      throw Error(ErrorCode::kDuplicateEntry, "duplicate lexicon entry '" + entry.surface() + "'");
    }
  }
  entries_.push_back(std::move(entry));
  bucket.push_back(entries_.size() - 1);
  std::stable_sort(bucket.begin(), bucket.end(), [this](std::size_t a, std::size_t b) {
    return entries_[a].tokens.size() > entries_[b].tokens.size();
  });
}

std::optional<LexiconMatch> Lexicon::lookup_longest(std::span<const std::string> tokens,
                                                    std::size_t position) const {
  if (position >= tokens.size()) return std::nullopt;
  const std::size_t window = std::min(kMaxEntryTokens, tokens.size() - position);
  std::vector<std::string> lowered;
  lowered.reserve(window);
  for (std::size_t i = 0; i < window; ++i) {
    lowered.push_back(unicode::to_lower(tokens[position + i]));
  }
  auto it = by_first_.find(lowered.front());
  if (it == by_first_.end()) return std::nullopt;
  for (std::size_t idx : it->second) {
    const LexiconEntry& e = entries_[idx];
    if (e.tokens.size() > window) continue;
    if (std::equal(e.tokens.begin(), e.tokens.end(), lowered.begin())) {
      return LexiconMatch{&e, e.tokens.size()};
    }
  }
  return std::nullopt;
}

const LexiconEntry* Lexicon::find_word(std::string_view lowered) const {
  auto it = by_first_.find(std::string(lowered));
  if (it == by_first_.end()) return nullptr;
  for (std::size_t idx : it->second) {
    if (entries_[idx].tokens.size() == 1) return &entries_[idx];
  }
  return nullptr;
}

CategoryCounts Lexicon::category_counts() const {
  CategoryCounts counts{};
  for (const auto& e : entries_) ++counts[static_cast<std::size_t>(e.category)];
  return counts;
}

std::string Lexicon::to_tsv() const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.surface();
    out.push_back('\t');
    out += category_tag(e.category);
    if (e.part_of_speech) {
      out.push_back('\t');
      out += *e.part_of_speech;
    }
    out.push_back('\n');
  }
  return out;
}

namespace {

std::vector<std::string> split_on(std::string_view line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(sep, start);
    fields.emplace_back(line.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return fields;
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  std::string current;
  while (pos < s.size()) {
    const std::size_t start = pos;
    const char32_t cp = unicode::decode(s, pos);
    if (unicode::is_space(cp)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.append(s.substr(start, pos - start));
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

Lexicon load_lexicon(std::string_view content, Language language) {
  Lexicon lexicon(language);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view raw = content.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped.front() == '#') {
      if (end == content.size()) break;
      continue;
    }
    const std::string where = "lexicon line " + std::to_string(line_no) + ": ";
    auto fields = split_on(raw, '\t');
    if (fields.size() < 2 || fields.size() > 3) {
      throw Error(ErrorCode::kParse, where + "expected surface<TAB>category[<TAB>pos]");
    }
    auto tokens = split_whitespace(fields[0]);
    if (tokens.empty()) throw Error(ErrorCode::kParse, where + "empty surface");
    if (tokens.size() > kMaxEntryTokens) {
      throw Error(ErrorCode::kParse, where + "surface longer than " +
                                         std::to_string(kMaxEntryTokens) + " tokens");
    }
    const std::string tag = trim(fields[1]);
    auto category = parse_category_tag(tag);
    if (!category) {
      throw Error(ErrorCode::kUnknownCategory, where + "unknown category '" + tag + "'");
    }
    LexiconEntry entry;
    entry.tokens = std::move(tokens);
    entry.category = *category;
    entry.language = language;
    if (fields.size() == 3) {
      std::string pos = trim(fields[2]);
      if (!pos.empty()) entry.part_of_speech = std::move(pos);
    }
    try {
      lexicon.add(std::move(entry));
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
    if (end == content.size()) break;
  }
  return lexicon;
}

std::optional<Language> language_from_filename(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".en.tsv")) return Language::kEnglish;
  if (ends_with(".fr.tsv")) return Language::kFrench;
  return std::nullopt;
}

Lexicon load_lexicon_file(const std::string& path) {
  auto language = language_from_filename(path);
  if (!language) {
    throw Error(ErrorCode::kInvalidArgument,
                "lexicon filename must end in .en.tsv or .fr.tsv: " + path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_lexicon(buf.str(), *language);
}

}  // namespace vaguecam
