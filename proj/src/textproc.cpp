#include "vaguecam/textproc.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <unordered_map>

#include "langid_samples.hpp"
#include "vaguecam/error.hpp"
#include "vaguecam/unicode.hpp"

namespace vaguecam {

namespace {

struct Cursor {
  std::string_view text;

  char32_t at(std::size_t pos) const {
    if (pos >= text.size()) return 0;
    return unicode::decode(text, pos);
  }
  std::size_t next(std::size_t pos) const {
    unicode::decode(text, pos);
    return pos;
  }
};

bool is_alnum(char32_t cp) { return unicode::is_letter(cp) || unicode::is_digit(cp); }

bool is_joiner(char32_t cp) { return cp == U'-' || cp == U'\'' || cp == 0x2019; }

}  // namespace

std::vector<Token> tokenize(std::string_view text, std::size_t offset) {
  std::vector<Token> tokens;
  const Cursor cur{text};
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = cur.at(pos);
    if (unicode::is_space(cp)) {
      pos = cur.next(pos);
      continue;
    }
    const std::size_t start = pos;
    if (!is_alnum(cp)) {
      pos = cur.next(pos);
      tokens.push_back({std::string(text.substr(start, pos - start)), TokenKind::kPunctuation,
                        {offset + start, offset + pos}});
      continue;
    }
    bool has_letter = false;
    char32_t prev = 0;
    while (pos < text.size()) {
      const char32_t c = cur.at(pos);
      const std::size_t after = cur.next(pos);
      if (is_alnum(c)) {
        has_letter = has_letter || unicode::is_letter(c);
        prev = c;
        pos = after;
        continue;
      }
      const char32_t following = cur.at(after);
      const bool joins_word = is_joiner(c) && is_alnum(prev) && is_alnum(following);
      const bool joins_number = (c == U'.' || c == U',') && unicode::is_digit(prev) &&
                                unicode::is_digit(following);
      if (!joins_word && !joins_number) break;
      prev = c;
      pos = after;
    }
    tokens.push_back({std::string(text.substr(start, pos - start)),
                      has_letter ? TokenKind::kWord : TokenKind::kNumber,
                      {offset + start, offset + pos}});
  }
  return tokens;
}

namespace {

bool is_terminator(char32_t cp) { return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x2026; }

bool is_closer(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U')' || cp == U']' || cp == 0x201D ||
         cp == 0x2019 || cp == 0xBB;
}

bool is_opener(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U'(' || cp == U'[' || cp == 0x201C ||
         cp == 0x2018 || cp == 0xAB;
}

const std::vector<std::string_view>& abbreviations() {
  static const std::vector<std::string_view> kAbbrev = {
      "mr", "mrs", "ms", "dr", "prof", "st", "jr", "sr", "vs", "etc", "e.g", "i.e",
      "mme", "mlle", "cf", "no", "gen", "col", "lt", "sgt", "rev", "inc", "ltd", "co"};
  return kAbbrev;
}

// Word immediately preceding a `.` at `dot`, lowercased.
std::string word_before(std::string_view text, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0) {
    const char c = text[start - 1];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '(' || c == '"') break;
    --start;
  }
  return unicode::to_lower(text.substr(start, dot - start));
}

void push_sentence(std::vector<Sentence>& out, std::string_view text, std::size_t begin,
                   std::size_t end) {
  auto tokens = tokenize(text.substr(begin, end - begin), begin);
  if (tokens.empty()) return;
  Span span{tokens.front().span.begin, tokens.back().span.end};
  out.push_back({std::move(tokens), span});
}

}  // namespace

std::vector<Sentence> split_sentences(std::string_view text) {
  std::vector<Sentence> out;
  const Cursor cur{text};
  std::size_t seg_start = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = cur.at(pos);

    if (cp == U'\n') {
      // blank line
      std::size_t probe = cur.next(pos);
      while (probe < text.size() && (text[probe] == ' ' || text[probe] == '\t' ||
                                     text[probe] == '\r')) {
        ++probe;
      }
      if (probe < text.size() && text[probe] == '\n') {
        push_sentence(out, text, seg_start, pos);
        seg_start = probe + 1;
        pos = probe + 1;
        continue;
      }
      pos = cur.next(pos);
      continue;
    }

    if (!is_terminator(cp)) {
      pos = cur.next(pos);
      continue;
    }

    const std::size_t term_pos = pos;
    std::size_t end = cur.next(pos);
    while (end < text.size() && is_terminator(cur.at(end))) end = cur.next(end);
    while (end < text.size() && is_closer(cur.at(end))) end = cur.next(end);

    std::size_t probe = end;
    bool saw_space = false;
    while (probe < text.size() && unicode::is_space(cur.at(probe))) {
      saw_space = true;
      probe = cur.next(probe);
    }

    bool boundary = false;
    if (probe >= text.size()) {
      boundary = true;
    } else if (saw_space) {
      std::size_t first = probe;
      while (first < text.size() && is_opener(cur.at(first))) first = cur.next(first);
      const char32_t next_cp = cur.at(first);
      boundary = unicode::is_upper(next_cp) || unicode::is_digit(next_cp);
    }
    if (boundary && cp == U'.' && end == cur.next(term_pos)) {
      const std::string word = word_before(text, term_pos);
      const auto& abbrev = abbreviations();
      if (std::find(abbrev.begin(), abbrev.end(), word) != abbrev.end()) boundary = false;
    }

    if (boundary) {
      push_sentence(out, text, seg_start, end);
      seg_start = end;
    }
    pos = end;
  }
  if (seg_start < text.size()) push_sentence(out, text, seg_start, text.size());
  return out;
}

std::vector<std::u32string> trigram_profile(std::string_view text, std::size_t size) {
  std::unordered_map<std::u32string, std::size_t> counts;
  std::u32string word;
  auto flush = [&] {
    if (word.empty()) return;
    std::u32string padded = U" " + word + U" ";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) ++counts[padded.substr(i, 3)];
    word.clear();
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = unicode::decode(text, pos);
    if (unicode::is_letter(cp)) {
      word.push_back(unicode::to_lower(cp));
    } else {
      flush();
    }
  }
  flush();

  std::vector<std::pair<std::u32string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > size) ranked.resize(size);
  std::vector<std::u32string> profile;
  profile.reserve(ranked.size());
  for (auto& [gram, n] : ranked) profile.push_back(std::move(gram));
  return profile;
}

double out_of_place_distance(const std::vector<std::u32string>& document,
                             const std::vector<std::u32string>& language) {
  std::unordered_map<std::u32string, std::size_t> rank;
  for (std::size_t i = 0; i < language.size(); ++i) rank.emplace(language[i], i);
  const auto penalty = static_cast<double>(language.size());
  double distance = 0.0;
  for (std::size_t i = 0; i < document.size(); ++i) {
    auto it = rank.find(document[i]);
    if (it == rank.end()) {
      distance += penalty;
    } else {
      distance += std::abs(static_cast<double>(i) - static_cast<double>(it->second));
    }
  }
  return distance;
}

namespace {

struct BuiltinProfiles {
  std::vector<std::u32string> en;
  std::vector<std::u32string> fr;
};

const BuiltinProfiles& builtin_profiles() {
  static const BuiltinProfiles profiles{trigram_profile(detail::kLangIdSampleEn),
                                        trigram_profile(detail::kLangIdSampleFr)};
  return profiles;
}

}  // namespace

LanguageGuess detect_language(std::string_view text) {
  if (unicode::length(text) < kMinLanguageIdChars) {
    throw Error(ErrorCode::kInsufficientText,
                "language detection needs at least " + std::to_string(kMinLanguageIdChars) +
                    " characters");
  }
  const auto doc = trigram_profile(text);
  if (doc.empty()) {
    throw Error(ErrorCode::kInsufficientText, "no letters to identify a language from");
  }
  const auto& profiles = builtin_profiles();
  LanguageGuess guess;
  guess.distance_en = out_of_place_distance(doc, profiles.en);
  guess.distance_fr = out_of_place_distance(doc, profiles.fr);
  const double total = guess.distance_en + guess.distance_fr;
  if (guess.distance_fr < guess.distance_en) {
    guess.language = Language::kFrench;
    guess.confidence = total > 0 ? guess.distance_en / total : 0.5;
  } else {
    guess.language = Language::kEnglish;
    guess.confidence = total > 0 ? guess.distance_fr / total : 0.5;
  }
  return guess;
}

}  // namespace vaguecam
