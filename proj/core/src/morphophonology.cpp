#include "imla/morphophonology.hpp"

#include "imla/errors.hpp"
#include "imla/utf8.hpp"

namespace imla::phon {
namespace {

char32_t plain_vowel(char32_t c) {
    switch (c) {
        case U'â': return U'a';
        case U'î': return U'i';
        case U'û': return U'u';
        default: return c;
    }
}

// Latin Extended-A is mostly even=upper, odd=lower pairs, except for these ranges
// where the pairing flips.
bool odd_upper_block(char32_t c) {
    return (c >= 0x0139 && c <= 0x0148) || (c >= 0x0179 && c <= 0x017E);
}

}  // namespace

std::optional<VowelClass> vowel_class(char32_t c) {
    switch (plain_vowel(to_lower(c))) {
        case U'a': return VowelClass{Backness::back, Rounding::unrounded};
        case U'ı': return VowelClass{Backness::back, Rounding::unrounded};
        case U'o': return VowelClass{Backness::back, Rounding::rounded};
        case U'u': return VowelClass{Backness::back, Rounding::rounded};
        case U'e': return VowelClass{Backness::front, Rounding::unrounded};
        case U'i': return VowelClass{Backness::front, Rounding::unrounded};
        case U'ö': return VowelClass{Backness::front, Rounding::rounded};
        case U'ü': return VowelClass{Backness::front, Rounding::rounded};
        default: return std::nullopt;
    }
}

bool is_vowel(char32_t c) { return vowel_class(c).has_value(); }

char32_t to_lower(char32_t c) {
    if (c == U'I') return U'ı';
    if (c == U'İ') return U'i';
    if (c >= U'A' && c <= U'Z') return c + 32;
    if (c < 0x80) return c;
    if ((c >= 0x00C0 && c <= 0x00DE) && c != 0x00D7) return c + 0x20;
    if (c >= 0x0100 && c <= 0x017F) {
        if (c == 0x0131 || c == 0x0138 || c == 0x0149 || c == 0x017F) return c;
        if (c == 0x0178) return 0x00FF;
        bool const upper_here = odd_upper_block(c) ? (c % 2 == 1) : (c % 2 == 0);
        return upper_here ? c + 1 : c;
    }
    if (c >= 0x0391 && c <= 0x03AB && c != 0x03A2) return c + 0x20;
    if (c >= 0x0410 && c <= 0x042F) return c + 0x20;
    if (c >= 0x0400 && c <= 0x040F) return c + 0x50;
    return c;
}

char32_t to_upper(char32_t c) {
    if (c == U'i') return U'İ';
    if (c == U'ı') return U'I';
    if (c >= U'a' && c <= U'z') return c - 32;
    if (c < 0x80) return c;
    if ((c >= 0x00E0 && c <= 0x00FE) && c != 0x00F7) return c - 0x20;
    if (c == 0x00FF) return 0x0178;
    if (c >= 0x0100 && c <= 0x017F) {
        if (c == 0x0130 || c == 0x0138 || c == 0x0149 || c == 0x017F || c == 0x0178) return c;
        bool const lower_here = odd_upper_block(c) ? (c % 2 == 0) : (c % 2 == 1);
        return lower_here ? c - 1 : c;
    }
    if (c >= 0x03B1 && c <= 0x03CB && c != 0x03C2) return c - 0x20;
    if (c >= 0x0430 && c <= 0x044F) return c - 0x20;
    if (c >= 0x0450 && c <= 0x045F) return c - 0x50;
    return c;
}

bool is_upper(char32_t c) { return to_lower(c) != c; }
bool is_lower(char32_t c) { return to_upper(c) != c; }

bool is_letter(char32_t c) {
    if (is_upper(c) || is_lower(c)) return true;
    // Caseless letters we may meet in Turkish text: ß, ĸ, ŉ and the wider letter blocks.
    return c == 0x00DF || c == 0x0138 || c == 0x0149 || (c >= 0x0180 && c <= 0x024F)
           || (c >= 0x05D0 && c <= 0x05EA) || (c >= 0x0620 && c <= 0x064A)
           || (c >= 0x4E00 && c <= 0x9FFF);
}

std::u32string lower(std::u32string_view word) {
    std::u32string out(word);
    for (auto& c : out) c = to_lower(c);
    return out;
}

std::u32string upper(std::u32string_view word) {
    std::u32string out(word);
    for (auto& c : out) c = to_upper(c);
    return out;
}

std::string turkish_case_fold(std::string_view word, CaseDirection direction) {
    auto const text = utf8::decode(word);
    return utf8::encode(direction == CaseDirection::lower ? lower(text) : upper(text));
}

std::u32string capitalize(std::u32string_view word) {
    std::u32string out(word);
    if (!out.empty()) out[0] = to_upper(out[0]);
    return out;
}

std::string capitalize(std::string_view word) {
    return utf8::encode(capitalize(utf8::decode(word)));
}

std::optional<char32_t> last_vowel(std::u32string_view word) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (is_vowel(*it)) return plain_vowel(to_lower(*it));
    }
    return std::nullopt;
}

std::optional<std::string> last_vowel(std::string_view word) {
    auto const v = last_vowel(utf8::decode(word));
    if (!v) return std::nullopt;
    return utf8::encode(*v);
}

char32_t four_way(char32_t vowel) {
    auto const cls = vowel_class(vowel);
    if (!cls) throw DomainError("not a vowel: " + utf8::encode(vowel));
    if (cls->backness == Backness::back)
        return cls->rounding == Rounding::rounded ? U'u' : U'ı';
    return cls->rounding == Rounding::rounded ? U'ü' : U'i';
}

char32_t two_way(char32_t vowel) {
    auto const cls = vowel_class(vowel);
    if (!cls) throw DomainError("not a vowel: " + utf8::encode(vowel));
    return cls->backness == Backness::back ? U'a' : U'e';
}

std::u32string harmonize_de(std::u32string_view host) {
    auto const v = last_vowel(host);
    if (!v) throw DomainError("cannot harmonize a vowel-free host: " + utf8::encode(host));
    return two_way(*v) == U'a' ? U"da" : U"de";
}

std::string harmonize_de(std::string_view host) {
    return utf8::encode(harmonize_de(utf8::decode(host)));
}

std::u32string drop_haplology_vowel(std::u32string_view stem) {
    std::size_t vowels = 0;
    for (char32_t c : stem) vowels += is_vowel(c) ? 1 : 0;
    if (vowels < 2 || stem.size() < 3 || is_vowel(stem.back()) || !is_vowel(stem[stem.size() - 2]))
        throw DomainError("no droppable final-syllable vowel: " + utf8::encode(stem));
    std::u32string out(stem);
    out.erase(out.size() - 2, 1);
    return out;
}

std::string drop_haplology_vowel(std::string_view stem) {
    return utf8::encode(drop_haplology_vowel(utf8::decode(stem)));
}

std::u32string voice_final_consonant(std::u32string_view word) {
    if (word.empty()) throw DomainError("empty word has no final consonant");
    std::u32string out(word);
    char32_t& last = out.back();
    bool const upper_case = is_upper(last);
    switch (to_lower(last)) {
        case U'p': last = U'b'; break;
        case U'ç': last = U'c'; break;
        case U't': last = U'd'; break;
        case U'k':
            last = (out.size() > 1 && to_lower(out[out.size() - 2]) == U'n') ? U'g' : U'ğ';
            break;
        default:
            throw DomainError("no voiceable final consonant: " + utf8::encode(word));
    }
    if (upper_case) last = to_upper(last);
    return out;
}

std::string voice_final_consonant(std::string_view word) {
    return utf8::encode(voice_final_consonant(utf8::decode(word)));
}

}  // namespace imla::phon
