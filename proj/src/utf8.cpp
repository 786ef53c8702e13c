#include "stylekit/utf8.hpp"

#include "stylekit/common.hpp"

namespace stylekit::utf8 {

namespace {

[[noreturn]] void malformed(std::size_t offset) {
  throw validation_error("malformed UTF-8 at byte " + std::to_string(offset));
}

}  // namespace

std::vector<char32_t> decode(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    std::size_t extra = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      extra = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      extra = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      extra = 3;
    } else {
      malformed(i);
    }
    if (extra > 0 && i + extra >= text.size()) malformed(i);
    for (std::size_t k = 1; k <= extra; ++k) {
      const unsigned char b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) malformed(i);
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings and surrogates.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) || (extra == 3 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      malformed(i);
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::size_t length(std::string_view text) { return decode(text).size(); }

bool is_punctuation(char32_t cp) {
  // ASCII punctuation and symbols.
  if ((cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
      (cp >= 0x7B && cp <= 0x7E)) {
    return true;
  }
  // Latin-1 punctuation (inverted marks, middle dot, guillemets).
  if (cp == 0xA1 || cp == 0xA7 || cp == 0xAB || cp == 0xB6 || cp == 0xB7 || cp == 0xBB ||
      cp == 0xBF) {
    return true;
  }
  // General punctuation, supplemental punctuation.
  if ((cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x2E00 && cp <= 0x2E7F)) return true;
  // CJK symbols and punctuation (。、「」etc.).
  if (cp >= 0x3000 && cp <= 0x303F) return true;
  // Vertical/compat/small form variants.
  if ((cp >= 0xFE10 && cp <= 0xFE1F) || (cp >= 0xFE30 && cp <= 0xFE4F) ||
      (cp >= 0xFE50 && cp <= 0xFE6F)) {
    return true;
  }
  // Fullwidth/halfwidth punctuation ranges (！？～：；（）etc.).
  if ((cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
      (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65)) {
    return true;
  }
  return false;
}

bool all_punctuation(std::string_view token) {
  if (token.empty()) return false;
  for (char32_t cp : decode(token)) {
    if (!is_punctuation(cp)) return false;
  }
  return true;
}

}  // namespace stylekit::utf8
