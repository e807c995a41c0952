#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace imla {

/// Offsets everywhere are code point indices into the document.
struct Token {
    std::u32string surface;
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t sentence_index = 0;

    bool operator==(const Token&) const = default;
};

struct SentenceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t index = 0;
    std::vector<Token> tokens;
};

/// Abbreviations that do not end a sentence ("Dr.", "vb."). Matched case-insensitively.
class Abbreviations {
public:
    Abbreviations() = default;
    explicit Abbreviations(const std::vector<std::string>& entries);
    static Abbreviations load(const std::filesystem::path& path);

    bool contains(std::u32string_view word) const;
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::set<std::u32string, std::less<>> entries_;
};

/// Sentence spans with their tokens. Boundaries: '.', '!', '?', '…' followed by whitespace
/// and an uppercase letter or digit (unless the word is an abbreviation), and every newline.
std::vector<SentenceSpan> split_sentences(std::u32string_view text, const Abbreviations& abbreviations = {});
std::vector<SentenceSpan> split_sentences(std::string_view text, const Abbreviations& abbreviations = {});

/// Word tokens are maximal runs of letters/digits, joined across an apostrophe or hyphen
/// only when both neighbours are letters/digits. Any other non-space character is a token.
std::vector<Token> tokenize(const SentenceSpan& sentence, std::u32string_view text);
std::vector<Token> tokenize(const SentenceSpan& sentence, std::string_view text);

/// All tokens of all sentences, in document order.
std::vector<Token> tokenize_document(std::u32string_view text, const Abbreviations& abbreviations = {});

bool is_word_char(char32_t c);
bool is_word_token(const Token& token);

}  // namespace imla
