#include "morphtok/utf8.hpp"

namespace morphtok::utf8 {

namespace {

// Length of the sequence introduced by lead byte `b`, 0 if invalid.
int sequence_length(unsigned char b) {
  if (b < 0x80) return 1;
  if (b >= 0xC2 && b <= 0xDF) return 2;
  if (b >= 0xE0 && b <= 0xEF) return 3;
  if (b >= 0xF0 && b <= 0xF4) return 4;
  return 0;
}

// Decodes one code point at `pos`; returns the number of bytes consumed,
// or 0 if the sequence is malformed.
std::size_t decode_one(std::string_view s, std::size_t pos, char32_t& cp) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  const int n = sequence_length(lead);
  if (n == 0 || pos + n > s.size()) return 0;
  if (n == 1) {
    cp = lead;
    return 1;
  }
  char32_t value = lead & (0x7F >> n);
  for (int i = 1; i < n; ++i) {
    const auto c = static_cast<unsigned char>(s[pos + i]);
    if ((c & 0xC0) != 0x80) return 0;
    value = (value << 6) | (c & 0x3F);
  }
  // Reject overlongs, surrogates and out-of-range values.
  if ((n == 3 && value < 0x800) || (n == 4 && value < 0x10000) ||
      (value >= 0xD800 && value <= 0xDFFF) || value > 0x10FFFF) {
    return 0;
  }
  cp = value;
  return static_cast<std::size_t>(n);
}

}  // namespace

std::u32string decode(std::string_view bytes,
                      std::optional<char32_t> replacement) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    char32_t cp = 0;
    const std::size_t n = decode_one(bytes, pos, cp);
    if (n == 0) {
      if (replacement) out.push_back(*replacement);
      ++pos;
      continue;
    }
    out.push_back(cp);
    pos += n;
  }
  return out;
}

void append(std::string& out, char32_t cp) {
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

std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append(out, cp);
  return out;
}

std::vector<std::size_t> boundaries(std::string_view text) {
  std::vector<std::size_t> out;
  out.reserve(text.size() + 1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    out.push_back(pos);
    char32_t cp = 0;
    const std::size_t n = decode_one(text, pos, cp);
    pos += n == 0 ? 1 : n;
  }
  out.push_back(text.size());
  return out;
}

std::size_t length(std::string_view text) {
  return boundaries(text).size() - 1;
}

std::vector<std::string> chars(std::string_view text) {
  const auto b = boundaries(text);
  std::vector<std::string> out;
  out.reserve(b.size() - 1);
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    out.emplace_back(text.substr(b[i], b[i + 1] - b[i]));
  }
  return out;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

}  // namespace morphtok::utf8
