#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace imla::utf8 {

/// Decodes UTF-8 into code points. Malformed sequences become U+FFFD, one per bad byte.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view text);
std::string encode(char32_t c);

/// Number of code points in a UTF-8 string.
std::size_t length(std::string_view bytes);

/// Code point slice [start, end) of a UTF-8 string; offsets are clamped to the string length.
std::string slice(std::string_view bytes, std::size_t start, std::size_t end);

bool is_valid(std::string_view bytes);

}  // namespace imla::utf8
