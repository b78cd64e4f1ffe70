#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vaguecam {

// The four lexical vagueness types. Approximation and Generality are treated
// as factual, DegreeVague and Combinatorial as subjective.
enum class VaguenessCategory : int {
  kApproximation = 0,  // VA
  kGenerality = 1,     // VG
  kDegreeVague = 2,    // VD
  kCombinatorial = 3,  // VC
};

inline constexpr std::size_t kNumCategories = 4;
inline constexpr std::size_t kMaxEntryTokens = 5;

inline constexpr bool is_subjective(VaguenessCategory c) {
  return c == VaguenessCategory::kDegreeVague || c == VaguenessCategory::kCombinatorial;
}
inline constexpr bool is_factual(VaguenessCategory c) { return !is_subjective(c); }

// "VA", "VG", "VD", "VC".
std::string_view category_tag(VaguenessCategory c);
std::optional<VaguenessCategory> parse_category_tag(std::string_view tag);

enum class Language { kEnglish, kFrench };

// "EN" / "FR".
std::string_view language_tag(Language lang);
std::optional<Language> parse_language_tag(std::string_view tag);

struct LexiconEntry {
  std::vector<std::string> tokens;  // lowercased, 1..kMaxEntryTokens
  VaguenessCategory category = VaguenessCategory::kCombinatorial;
  Language language = Language::kEnglish;
  std::optional<std::string> part_of_speech;

  // Tokens joined by single spaces.
  std::string surface() const;

  bool operator==(const LexiconEntry&) const = default;
};

struct LexiconMatch {
  const LexiconEntry* entry = nullptr;
  std::size_t length = 0;
};

using CategoryCounts = std::array<std::size_t, kNumCategories>;

// Immutable after construction; lookups are const and thread-safe.
class Lexicon {
 public:
  explicit Lexicon(Language language = Language::kEnglish) : language_(language) {}

  // Throws Error(kDuplicateEntry) when (surface, language) is already present.
  void add(LexiconEntry entry);

  Language language() const { return language_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<LexiconEntry>& entries() const { return entries_; }

  // Longest entry matching tokens[position...], compared case-insensitively.
  std::optional<LexiconMatch> lookup_longest(std::span<const std::string> tokens,
                                             std::size_t position) const;

  // Exact single-token lookup on an already-lowercased word.
  const LexiconEntry* find_word(std::string_view lowered) const;

  CategoryCounts category_counts() const;

  // Inverse of load_lexicon: one `surface\tTAG[\tpos]` line per entry.
  std::string to_tsv() const;

  bool operator==(const Lexicon& other) const {
    return language_ == other.language_ && entries_ == other.entries_;
  }

 private:
  Language language_;
  std::vector<LexiconEntry> entries_;
  // first token -> entry indices, longest first
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_;
};

// Parses the TSV lexicon format. Errors carry the 1-based line number.
Lexicon load_lexicon(std::string_view content, Language language);

// Reads a `*.en.tsv` / `*.fr.tsv` file, taking the language from the name.
Lexicon load_lexicon_file(const std::string& path);

// Language implied by a lexicon filename, if it follows the naming rule.
std::optional<Language> language_from_filename(std::string_view path);

}  // namespace vaguecam
