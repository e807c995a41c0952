#include "imla/segmentation.hpp"

#include <fstream>

#include "imla/errors.hpp"
#include "imla/morphophonology.hpp"
#include "imla/utf8.hpp"

namespace imla {
namespace {

bool is_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v'
           || c == 0x00A0 || c == 0x2028 || c == 0x2029 || (c >= 0x2000 && c <= 0x200A) || c == 0x3000;
}

bool is_newline(char32_t c) { return c == U'\n' || c == U'\r' || c == 0x2028 || c == 0x2029; }

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?' || c == U'…'; }

bool is_closer(char32_t c) {
    return c == U'"' || c == U'\'' || c == U')' || c == U']' || c == U'»' || c == U'”' || c == U'’';
}

bool is_opener(char32_t c) {
    return c == U'"' || c == U'\'' || c == U'(' || c == U'[' || c == U'«' || c == U'“' || c == U'‘';
}

bool is_joiner(char32_t c) { return c == U'\'' || c == U'’' || c == U'-'; }

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool is_combining(char32_t c) { return c >= 0x0300 && c <= 0x036F; }

// The whitespace-delimited word ending at `end` (exclusive).
std::u32string_view word_before(std::u32string_view text, std::size_t end) {
    std::size_t start = end;
    while (start > 0 && !is_space(text[start - 1])) --start;
    return text.substr(start, end - start);
}

void push_sentence(std::vector<SentenceSpan>& out, std::u32string_view text, std::size_t start,
                   std::size_t end) {
    while (start < end && is_space(text[start])) ++start;
    while (end > start && is_space(text[end - 1])) --end;
    if (start == end) return;
    SentenceSpan s;
    s.start = start;
    s.end = end;
    s.index = out.size();
    s.tokens = tokenize(s, text);
    out.push_back(std::move(s));
}

}  // namespace

Abbreviations::Abbreviations(const std::vector<std::string>& entries) {
    for (auto const& e : entries) {
        if (!e.empty()) entries_.insert(phon::lower(utf8::decode(e)));
    }
}

Abbreviations Abbreviations::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LexiconError(path.string() + ": cannot open abbreviation list");
    std::vector<std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        entries.push_back(line);
    }
    return Abbreviations(entries);
}

bool Abbreviations::contains(std::u32string_view word) const {
    return entries_.count(phon::lower(word)) != 0;
}

bool is_word_char(char32_t c) { return is_digit(c) || phon::is_letter(c) || is_combining(c); }

bool is_word_token(const Token& token) {
    for (char32_t c : token.surface) {
        if (phon::is_letter(c)) return true;
    }
    return false;
}

std::vector<SentenceSpan> split_sentences(std::u32string_view text, const Abbreviations& abbreviations) {
    std::vector<SentenceSpan> out;
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        char32_t const c = text[i];
        if (is_newline(c)) {
            push_sentence(out, text, start, i);
            while (i < text.size() && is_space(text[i])) ++i;
            start = i;
            continue;
        }
        if (!is_terminator(c)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_terminator(text[j])) ++j;
        while (j < text.size() && is_closer(text[j])) ++j;
        std::size_t k = j;
        while (k < text.size() && is_space(text[k]) && !is_newline(text[k])) ++k;
        bool boundary = false;
        if (k > j && k < text.size()) {
            std::size_t n = k;
            while (n < text.size() && is_opener(text[n])) ++n;
            boundary = n < text.size() && (phon::is_upper(text[n]) || is_digit(text[n]));
        }
        if (boundary && text[i] == U'.' && j == i + 1) {
            boundary = !abbreviations.contains(word_before(text, i + 1));
        }
        if (boundary) {
            push_sentence(out, text, start, j);
            start = j;
        }
        i = j;
    }
    push_sentence(out, text, start, text.size());
    return out;
}

std::vector<SentenceSpan> split_sentences(std::string_view text, const Abbreviations& abbreviations) {
    auto const decoded = utf8::decode(text);
    return split_sentences(std::u32string_view(decoded), abbreviations);
}

std::vector<Token> tokenize(const SentenceSpan& sentence, std::u32string_view text) {
    std::vector<Token> out;
    std::size_t const end = std::min(sentence.end, text.size());
    std::size_t i = sentence.start;
    auto emit = [&](std::size_t a, std::size_t b) {
        out.push_back(Token{std::u32string(text.substr(a, b - a)), a, b, sentence.index});
    };
    while (i < end) {
        if (is_space(text[i])) {
            ++i;
            continue;
        }
        if (!is_word_char(text[i]) || is_combining(text[i])) {
            emit(i, i + 1);
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < end) {
            if (is_word_char(text[j])) {
                ++j;
            } else if (is_joiner(text[j]) && j + 1 < end && is_word_char(text[j + 1])
                       && !is_combining(text[j + 1])) {
                j += 2;
            } else {
                break;
            }
        }
        emit(i, j);
        i = j;
    }
    return out;
}

std::vector<Token> tokenize(const SentenceSpan& sentence, std::string_view text) {
    auto const decoded = utf8::decode(text);
    return tokenize(sentence, std::u32string_view(decoded));
}

std::vector<Token> tokenize_document(std::u32string_view text, const Abbreviations& abbreviations) {
    std::vector<Token> out;
    for (auto& s : split_sentences(text, abbreviations)) {
        for (auto& t : s.tokens) out.push_back(std::move(t));
    }
    return out;
}

}  // namespace imla
