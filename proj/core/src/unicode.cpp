#include "qembed/unicode.hpp"

#include <array>

#include "qembed/errors.hpp"

namespace qembed::uni {

namespace {

struct ScriptRange {
  char32_t lo;
  char32_t hi;
  Script script;
};

// Major alphabetic blocks. Deliberately coarse: token classification needs
// "is a letter" and "which alphabet", not full Unicode property data.
constexpr std::array<ScriptRange, 24> kLetterRanges{{
    {U'A', U'Z', Script::Latin},
    {U'a', U'z', Script::Latin},
    {0x00C0, 0x00D6, Script::Latin},
    {0x00D8, 0x00F6, Script::Latin},
    {0x00F8, 0x024F, Script::Latin},  // Latin extended A/B
    {0x1E00, 0x1EFF, Script::Latin},  // Latin extended additional
    {0x0386, 0x0386, Script::Greek},
    {0x0388, 0x03A1, Script::Greek},
    {0x03A3, 0x03FF, Script::Greek},
    {0x0400, 0x04FF, Script::Cyrillic},
    {0x0500, 0x052F, Script::Cyrillic},
    {0x0531, 0x0556, Script::Armenian},
    {0x0561, 0x0587, Script::Armenian},
    {0x05D0, 0x05EA, Script::Hebrew},
    {0x0620, 0x064A, Script::Arabic},
    {0x066E, 0x06D3, Script::Arabic},
    {0x0904, 0x0939, Script::Devanagari},
    {0x0958, 0x0961, Script::Devanagari},
    {0x3041, 0x3096, Script::Hiragana},
    {0x30A1, 0x30FA, Script::Katakana},
    {0x3400, 0x4DBF, Script::Han},
    {0x4E00, 0x9FFF, Script::Han},
    {0xAC00, 0xD7A3, Script::Hangul},
    {0xF900, 0xFA6D, Script::Han},
}};

constexpr char32_t kReplacement = 0xFFFD;

}  // namespace

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
  while (i < text.size()) {
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > text.size()) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k < len; ++k) {
      const unsigned char bk = byte(i + k);
      if ((bk & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (bk & 0x3F);
    }
    // Reject overlong encodings and surrogate range.
    if (ok && ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
               (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF)) {
      ok = false;
    }
    if (!ok) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

Script script_of(char32_t cp) {
  for (const auto& r : kLetterRanges) {
    if (cp >= r.lo && cp <= r.hi) return r.script;
  }
  return Script::None;
}

bool is_letter(char32_t cp) { return script_of(cp) != Script::None; }

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;  // Latin-1
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;  // Greek
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;                  // Cyrillic А-Я
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;                  // Ё and friends
  return cp;
}

std::string lower_copy(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : decode_utf8(text)) append_utf8(out, to_lower(cp));
  return out;
}

Script script_from_name(const std::string& name) {
  if (name == "latin") return Script::Latin;
  if (name == "greek") return Script::Greek;
  if (name == "cyrillic") return Script::Cyrillic;
  if (name == "armenian") return Script::Armenian;
  if (name == "hebrew") return Script::Hebrew;
  if (name == "arabic") return Script::Arabic;
  if (name == "devanagari") return Script::Devanagari;
  if (name == "hiragana") return Script::Hiragana;
  if (name == "katakana") return Script::Katakana;
  if (name == "han") return Script::Han;
  if (name == "hangul") return Script::Hangul;
  throw ConfigError("unknown script name: " + name);
}

std::string script_name(Script script) {
  switch (script) {
    case Script::None: return "none";
    case Script::Latin: return "latin";
    case Script::Greek: return "greek";
    case Script::Cyrillic: return "cyrillic";
    case Script::Armenian: return "armenian";
    case Script::Hebrew: return "hebrew";
    case Script::Arabic: return "arabic";
    case Script::Devanagari: return "devanagari";
    case Script::Hiragana: return "hiragana";
    case Script::Katakana: return "katakana";
    case Script::Han: return "han";
    case Script::Hangul: return "hangul";
  }
  return "none";
}

}  // namespace qembed::uni
