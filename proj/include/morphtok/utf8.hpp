#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morphtok::utf8 {

/// Decodes UTF-8. Invalid byte sequences become `replacement`, or are
/// dropped when it is empty.
std::u32string decode(std::string_view bytes,
                      std::optional<char32_t> replacement = U'�');

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

/// Byte offsets of every code point start plus the end offset, so a
/// string of n code points yields n + 1 offsets.
std::vector<std::size_t> boundaries(std::string_view text);

std::size_t length(std::string_view text);

/// The individual code points of `text` as UTF-8 strings.
std::vector<std::string> chars(std::string_view text);

bool is_space(char32_t cp);

}  // namespace morphtok::utf8
