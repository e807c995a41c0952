#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace imla::phon {

enum class Backness { front, back };
enum class Rounding { unrounded, rounded };

struct VowelClass {
    Backness backness;
    Rounding rounding;
    bool operator==(const VowelClass&) const = default;
};

enum class CaseDirection { lower, upper };

/// Classification of the eight Turkish vowels (plus circumflexed â, î, û); none for anything else.
std::optional<VowelClass> vowel_class(char32_t c);
bool is_vowel(char32_t c);

/// Locale-correct single character casing: İ<->i, I<->ı; Latin, Greek and Cyrillic otherwise.
char32_t to_lower(char32_t c);
char32_t to_upper(char32_t c);
bool is_upper(char32_t c);
bool is_lower(char32_t c);
bool is_letter(char32_t c);

std::u32string lower(std::u32string_view word);
std::u32string upper(std::u32string_view word);
std::string turkish_case_fold(std::string_view word, CaseDirection direction);

/// Uppercases only the first character.
std::u32string capitalize(std::u32string_view word);
std::string capitalize(std::string_view word);

/// Rightmost vowel after lowercasing; circumflexed vowels are reported plain.
std::optional<char32_t> last_vowel(std::u32string_view word);
std::optional<std::string> last_vowel(std::string_view word);

/// High vowel harmonizing with `vowel` (ı, i, u, ü).
char32_t four_way(char32_t vowel);
/// Low vowel harmonizing with `vowel` (a, e).
char32_t two_way(char32_t vowel);

/// "de" or "da" for the separately written conjunction. Throws DomainError for vowel-free hosts.
std::u32string harmonize_de(std::u32string_view host);
std::string harmonize_de(std::string_view host);

/// Removes the vowel of the final syllable (ağız -> ağz). Throws DomainError unless the stem
/// has at least two vowels and ends vowel + consonant.
std::u32string drop_haplology_vowel(std::u32string_view stem);
std::string drop_haplology_vowel(std::string_view stem);

/// p->b, ç->c, t->d, k->ğ (k->g after n). Throws DomainError for other finals.
std::u32string voice_final_consonant(std::u32string_view word);
std::string voice_final_consonant(std::string_view word);

}  // namespace imla::phon
