#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vaguecam/lexicon.hpp"

namespace vaguecam {

enum class TokenKind { kWord, kPunctuation, kNumber };

struct Span {
  std::size_t begin = 0;  // byte offsets, half-open
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::kWord;
  Span span;

  bool counts_as_word() const { return kind != TokenKind::kPunctuation; }
};

struct Sentence {
  std::vector<Token> tokens;  // spans index into the source text
  Span span;
};

// Words split on whitespace; punctuation marks become separate tokens.
// Hyphens and apostrophes between letters, and `.`/`,` between digits, stay
// inside the token. `offset` is added to every span.
std::vector<Token> tokenize(std::string_view text, std::size_t offset = 0);

// Splits after `.`, `!` or `?` (plus trailing quotes/brackets) when followed by
// whitespace and an uppercase letter or digit, or by the end of the text.
// Blank lines also end a sentence. Known abbreviations never end one.
std::vector<Sentence> split_sentences(std::string_view text);

struct LanguageGuess {
  Language language = Language::kEnglish;
  double confidence = 0.0;  // in [0.5, 1] for the winner
  double distance_en = 0.0;
  double distance_fr = 0.0;
};

inline constexpr std::size_t kMinLanguageIdChars = 20;
inline constexpr std::size_t kTrigramProfileSize = 300;

// Rank-order character trigram comparison against the built-in EN and FR
// profiles. Throws Error(kInsufficientText) below kMinLanguageIdChars.
LanguageGuess detect_language(std::string_view text);

// Top-`size` character trigrams of `text`, most frequent first (ties broken
// lexicographically). Exposed for tests and profile generation.
std::vector<std::u32string> trigram_profile(std::string_view text,
                                            std::size_t size = kTrigramProfileSize);

// Out-of-place distance of a document profile against a language profile.
double out_of_place_distance(const std::vector<std::u32string>& document,
                             const std::vector<std::u32string>& language);

}  // namespace vaguecam
