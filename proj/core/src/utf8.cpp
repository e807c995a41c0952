#include "imla/utf8.hpp"

namespace imla::utf8 {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at bytes[i]; advances i. Returns kReplacement
// and advances by one byte on malformed input.
char32_t next(std::string_view bytes, std::size_t& i, bool& ok) {
    auto const b0 = static_cast<unsigned char>(bytes[i]);
    ok = true;
    if (b0 < 0x80) {
        ++i;
        return b0;
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
        ok = false;
        ++i;
        return kReplacement;
    }
    if (i + len > bytes.size()) {
        ok = false;
        ++i;
        return kReplacement;
    }
    for (int k = 1; k < len; ++k) {
        auto const b = static_cast<unsigned char>(bytes[i + k]);
        if ((b & 0xC0) != 0x80) {
            ok = false;
            ++i;
            return kReplacement;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range values.
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ok = false;
        ++i;
        return kReplacement;
    }
    i += len;
    return cp;
}

void append(std::string& out, char32_t c) {
    if (c < 0x80) {
        out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
}

}  // namespace

std::u32string decode(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    bool ok = true;
    for (std::size_t i = 0; i < bytes.size();) {
        out.push_back(next(bytes, i, ok));
    }
    return out;
}

std::string encode(std::u32string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t c : text) {
        append(out, c);
    }
    return out;
}

std::string encode(char32_t c) {
    std::string out;
    append(out, c);
    return out;
}

std::size_t length(std::string_view bytes) {
    std::size_t n = 0;
    bool ok = true;
    for (std::size_t i = 0; i < bytes.size(); ++n) {
        next(bytes, i, ok);
    }
    return n;
}

std::string slice(std::string_view bytes, std::size_t start, std::size_t end) {
    auto const text = decode(bytes);
    end = std::min(end, text.size());
    start = std::min(start, end);
    return encode(std::u32string_view(text).substr(start, end - start));
}

bool is_valid(std::string_view bytes) {
    bool ok = true;
    for (std::size_t i = 0; i < bytes.size();) {
        next(bytes, i, ok);
        if (!ok) {
            return false;
        }
    }
    return true;
}

}  // namespace imla::utf8
