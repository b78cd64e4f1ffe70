#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace vaguecam::unicode {

// Decodes one UTF-8 code point starting at `pos`, advancing `pos`. Invalid
// bytes decode to U+FFFD and consume a single byte.
char32_t decode(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

// Simple case folding for ASCII, Latin-1 Supplement and Latin Extended-A,
// which covers English and French text.
char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view s);

bool is_space(char32_t cp);
bool is_letter(char32_t cp);
bool is_upper(char32_t cp);
bool is_digit(char32_t cp);

// Number of code points.
std::size_t length(std::string_view s);

}  // namespace vaguecam::unicode
