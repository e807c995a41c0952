#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "imla/grammar_engine.hpp"
#include "imla/rule_catalog.hpp"

namespace imla {

struct Annotation {
    std::size_t in_start = 0;
    std::size_t in_end = 0;
    std::size_t out_start = 0;
    std::size_t out_end = 0;
    std::string original_text;
    std::string replacement;
    int rule_id = 0;
    std::string category;
    std::string color;
    std::string title;
    std::string explanation;
    Stage stage = Stage::grammar;

    bool operator==(const Annotation&) const = default;
};

struct AnnotatedDocument {
    std::string original;
    std::string corrected;
    std::vector<Annotation> annotations;
    std::string engine_version;
    std::string lexicon_version;

    bool operator==(const AnnotatedDocument&) const = default;
};

/// Applies sorted, non-overlapping corrections. Throws ContractViolation otherwise.
AnnotatedDocument merge_and_offset(std::string_view text, const std::vector<Correction>& corrections,
                                   const RuleCatalog& catalog);

std::string to_plain(const AnnotatedDocument& doc);

/// One <p> per paragraph; each annotation a <button> carrying the pop-over payload.
std::string to_markup(const AnnotatedDocument& doc);

/// Escapes & < > " '.
std::string escape_markup(std::string_view text);

nlohmann::json to_json(const AnnotatedDocument& doc);
/// Throws ValidationError when required fields are missing or mistyped.
AnnotatedDocument annotated_from_json(const nlohmann::json& j);

/// Checks both AnnotatedDocument invariants; returns an empty string when they hold.
std::string check_invariants(const AnnotatedDocument& doc);

}  // namespace imla
