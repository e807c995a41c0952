#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "imla/lexicon.hpp"
#include "imla/rule_catalog.hpp"
#include "imla/segmentation.hpp"

namespace imla {

enum class Stage { grammar, spell };

std::string_view stage_name(Stage stage);

namespace rules {
inline constexpr int conj_de_sep = 1;
inline constexpr int conj_ki_sep = 7;
inline constexpr int foreign_r1 = 9;
inline constexpr int bisyll_hapl_vow = 13;
inline constexpr int light_verb_sep = 17;
inline constexpr int comp_verb_adj = 20;
inline constexpr int pronoun_exc = 22;
inline constexpr int light_verb_adj = 101;
inline constexpr int ques_clitic_sep = 102;
inline constexpr int redup_sep = 103;
inline constexpr int adv_vowel_restore = 104;
inline constexpr int spell = 200;
}  // namespace rules

struct Detection {
    std::size_t span_start = 0;
    std::size_t span_end = 0;
    int rule_id = 0;
    /// Token index range [token_begin, token_end) of the span.
    std::size_t token_begin = 0;
    std::size_t token_end = 0;

    bool operator==(const Detection&) const = default;
};

struct Correction {
    std::size_t span_start = 0;
    std::size_t span_end = 0;
    std::string replacement;
    int rule_id = 0;
    Stage stage = Stage::grammar;

    bool operator==(const Correction&) const = default;
};

/// Token sequence -> detections, and the reverse transformation of each detection.
/// Implementations must be deterministic and safe to call concurrently.
class Tagger {
public:
    virtual ~Tagger() = default;
    virtual std::vector<Detection> detect(const std::vector<Token>& tokens) const = 0;
    /// Throws EngineError when the detection's rule cannot transform its span.
    virtual Correction correct(const Detection& detection, const std::vector<Token>& tokens) const = 0;
};

/// The lexicon/pattern tagger. Holds a reference to `lexicons`, which must outlive it.
class RuleTagger final : public Tagger {
public:
    explicit RuleTagger(const LexiconSet& lexicons, std::set<int> disabled_rules = {});

    std::vector<Detection> detect(const std::vector<Token>& tokens) const override;
    Correction correct(const Detection& detection, const std::vector<Token>& tokens) const override;

    /// The grammar rule ids this tagger implements, ascending.
    static const std::vector<int>& rule_ids();

private:
    struct Match {
        std::size_t token_count;
        std::u32string replacement;
    };
    std::optional<Match> match(int rule_id, const std::vector<Token>& tokens, std::size_t i) const;

    const LexiconSet& lex_;
    std::set<int> disabled_;
};

std::vector<Detection> detect(const std::vector<Token>& tokens, const LexiconSet& lexicons);
Correction correct(const Detection& detection, const std::vector<Token>& tokens, const LexiconSet& lexicons);

/// detect -> correct over every sentence. Corrections are sorted and non-overlapping.
std::vector<Correction> run_grammar_pass(std::string_view text, const Tagger& tagger,
                                         const Abbreviations& abbreviations, const RuleCatalog& catalog);
std::vector<Correction> run_grammar_pass(std::string_view text, const LexiconSet& lexicons,
                                         const RuleCatalog& catalog);

/// Casing of `original` carried onto `replacement`: capitalized first letter, or all caps.
std::u32string carry_case(std::u32string_view original, std::u32string_view replacement);

}  // namespace imla
