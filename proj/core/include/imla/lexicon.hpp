#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "imla/segmentation.hpp"

namespace imla {

using WordSet = std::set<std::u32string, std::less<>>;
using WordMap = std::map<std::u32string, std::u32string, std::less<>>;

struct HaplologyStem {
    std::u32string stem;
    bool haplology = false;
    bool voicing = false;
    std::u32string canonical_sample;
};

struct LightVerbForm {
    std::u32string verb;
    std::u32string prefix;
    bool exact = false;
};

struct CliticTense {
    std::u32string value;
    bool bare = false;
};

/// Every grammar-rule lexicon, lowercased. Immutable once loaded.
struct LexiconSet {
    std::string version;

    WordSet conj_de_hosts;
    WordSet conj_de_exceptions;
    WordSet conj_de_locative_hosts;
    WordSet conj_ki_exceptions;
    WordSet conj_ki_hosts;
    WordMap foreign_r1;
    std::vector<HaplologyStem> haplology_stems;
    WordSet light_verb_sep;
    WordMap light_verb_adj;
    std::vector<LightVerbForm> light_verb_forms;
    WordSet comp_verb_converbs;
    std::map<std::u32string, std::vector<std::u32string>, std::less<>> comp_verb_aux;
    WordMap pronoun_exc;
    std::vector<CliticTense> ques_tenses;
    std::vector<std::u32string> ques_persons;
    WordSet redup_words;
    WordMap adv_vowel_restore;
    Abbreviations abbreviations;

    /// Reads the directory layout described in the README. Throws LexiconError.
    static LexiconSet load(const std::filesystem::path& dir);
};

/// Data rows of a '#'-commented TSV file; every row must have `columns` fields.
std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path& path, std::size_t columns);

/// Non-comment, non-empty lines.
std::vector<std::string> read_lines(const std::filesystem::path& path);

}  // namespace imla
