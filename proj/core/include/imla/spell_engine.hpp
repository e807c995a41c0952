#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "imla/grammar_engine.hpp"
#include "imla/segmentation.hpp"

namespace imla {

struct SpellCosts {
    double substitution = 1.0;
    double diacritic_substitution = 0.4;
    double transposition = 0.7;
    /// Candidate has a character the token lacks.
    double insertion = 1.0;
    double vowel_insertion = 0.8;
    /// Token has a character the candidate lacks.
    double deletion = 1.0;
    double max_distance = 2.0;
    /// A correction is made only when the best cost is strictly below this.
    double threshold = 1.5;
    std::size_t min_token_length = 3;

    /// key = value lines, '#' comments. Unknown keys and non-positive costs throw LexiconError.
    static SpellCosts load(const std::filesystem::path& path);
};

/// ı/i, s/ş, c/ç, g/ğ, o/ö, u/ü in either direction.
bool is_diacritic_pair(char32_t a, char32_t b);

/// Weighted restricted Damerau-Levenshtein (optimal string alignment) cost of turning
/// `token` into `candidate`.
double weighted_distance(std::u32string_view token, std::u32string_view candidate, const SpellCosts& costs);

struct SpellCandidate {
    std::u32string word;
    double cost = 0;
};

class SpellLexicon {
public:
    SpellLexicon(const std::vector<std::string>& wordlist, const std::vector<std::string>& gazetteer,
                 SpellCosts costs = {});
    /// wordlist.txt, gazetteer.txt and spell.conf from a lexicon directory.
    static SpellLexicon load(const std::filesystem::path& dir);

    bool known_word(std::u32string_view lower_word) const;
    /// Canonical proper noun for a lowercase form.
    std::optional<std::u32string> proper_noun(std::u32string_view lower_word) const;
    const SpellCosts& costs() const noexcept { return costs_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    std::size_t proper_noun_count() const noexcept { return gazetteer_.size(); }

    /// Every wordlist form within costs().max_distance of `lower_token`, cheapest first.
    std::vector<SpellCandidate> candidates(std::u32string_view lower_token) const;
    /// The unique cheapest candidate strictly under the threshold, if any.
    std::optional<SpellCandidate> best_correction(std::u32string_view lower_token) const;

private:
    struct Node {
        char32_t c = 0;
        std::uint32_t first_child = 0;
        std::uint32_t next_sibling = 0;
        bool terminal = false;
    };
    void insert(std::u32string_view word);
    template <typename Visit>
    void search(std::u32string_view token, Visit&& visit) const;

    std::vector<Node> nodes_;
    std::unordered_set<std::u32string> words_;
    std::unordered_map<std::u32string, std::u32string> gazetteer_;
    SpellCosts costs_;
};

std::vector<Correction> capitalize_proper_nouns(const std::vector<Token>& tokens, const SpellLexicon& lexicon);
std::vector<Correction> normalize_typos(const std::vector<Token>& tokens, const SpellLexicon& lexicon);

/// Capitalization, then typo normalization, over tokens no grammar correction touches.
/// Result is sorted by span_start.
std::vector<Correction> run_spell_pass(std::string_view text, const std::vector<Correction>& grammar_corrections,
                                       const SpellLexicon& lexicon, const Abbreviations& abbreviations = {});

}  // namespace imla
