#ifndef QEMBED_UNICODE_HPP
#define QEMBED_UNICODE_HPP

#include <string>
#include <string_view>
#include <vector>

namespace qembed::uni {

enum class Script {
  None,  // not a letter
  Latin,
  Greek,
  Cyrillic,
  Armenian,
  Hebrew,
  Arabic,
  Devanagari,
  Hiragana,
  Katakana,
  Han,
  Hangul,
};

// Decodes UTF-8; invalid byte sequences become U+FFFD one byte at a time.
std::vector<char32_t> decode_utf8(std::string_view text);
void append_utf8(std::string& out, char32_t cp);

// Letter test over the major alphabetic blocks listed in Script.
bool is_letter(char32_t cp);
// ASCII decimal digits only; this is the digit class the token filters use.
bool is_digit(char32_t cp);
Script script_of(char32_t cp);

// Simple case folding for ASCII, Latin-1, Greek and Cyrillic; other code
// points pass through unchanged.
char32_t to_lower(char32_t cp);
std::string lower_copy(std::string_view text);

Script script_from_name(const std::string& name);  // throws ConfigError
std::string script_name(Script script);

}  // namespace qembed::uni

#endif  // QEMBED_UNICODE_HPP
