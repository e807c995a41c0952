#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "imla/annotator.hpp"
#include "imla/grammar_engine.hpp"
#include "imla/lexicon.hpp"
#include "imla/pipeline.hpp"

namespace imla::fixture {

/// One pipeline per process; loading the spell lexicon costs a few hundred milliseconds.
const Pipeline& shared_pipeline();

std::filesystem::path data_dir();

/// Fresh, empty scratch directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

struct RoundTripCase {
    int rule_id = 0;
    std::string entry;     // lexicon entry the case was built from
    std::string input;     // forward-corrupted sentence
    std::string expected;  // canonical sentence
};

/// Corrupts every positive lexicon entry by its rule's forward transformation.
/// Entries the generator does not know how to realize become cases with an empty input.
std::vector<RoundTripCase> round_trip_cases(const LexiconSet& lexicons);

/// Random UTF-8 text mixing Turkish letters, markup-significant characters and newlines.
std::string random_text(std::mt19937_64& rng, std::size_t max_len);

/// Random sorted, non-overlapping corrections over `text` (code-point offsets).
std::vector<Correction> random_corrections(std::mt19937_64& rng, const std::string& text,
                                           const std::vector<int>& rule_ids);

/// Tags removed, entities decoded, one line per paragraph.
std::string strip_markup(const std::string& markup);

/// Newline runs collapsed to one '\n', leading/trailing newlines removed.
std::string collapse_paragraphs(const std::string& plain);

/// Plain unit-cost Damerau (OSA) distance, used to bound the weighted distance.
std::size_t unweighted_osa(std::u32string_view a, std::u32string_view b);

}  // namespace imla::fixture
