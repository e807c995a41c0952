#include "imla/pipeline.hpp"

#include <algorithm>
#include <cstdlib>

#include "imla/errors.hpp"

namespace imla {

struct Pipeline::Resources {
    RuleCatalog catalog;
    LexiconSet lexicons;
    SpellLexicon spell;
};

std::string_view engine_version() { return IMLA_VERSION; }

std::filesystem::path default_data_dir() {
    if (char const* env = std::getenv("IMLA_DATA_DIR"); env && *env) return env;
    std::filesystem::path const source = IMLA_DEFAULT_DATA_DIR;
    if (std::filesystem::exists(source / "catalog.tsv")) return source;
    return IMLA_INSTALLED_DATA_DIR;
}

std::filesystem::path default_catalog_path() { return default_data_dir() / "catalog.tsv"; }
std::filesystem::path default_lexicon_dir() { return default_data_dir() / "lexicons"; }

Pipeline::Pipeline(std::shared_ptr<const Resources> resources, std::shared_ptr<const Tagger> tagger)
    : resources_(std::move(resources)), tagger_(std::move(tagger)) {}

Pipeline Pipeline::load(const std::filesystem::path& catalog_path, const std::filesystem::path& lexicon_dir,
                        std::set<int> disabled_rules) {
    auto res = std::make_shared<Resources>(
        Resources{load_catalog(catalog_path), LexiconSet::load(lexicon_dir), SpellLexicon::load(lexicon_dir)});
    for (int id : RuleTagger::rule_ids()) {
        if (!res->catalog.contains(id))
            throw CatalogError(catalog_path.string() + ": no entry for engine rule " + std::to_string(id));
    }
    if (!res->catalog.contains(rules::spell))
        throw CatalogError(catalog_path.string() + ": no entry for the spelling rule " + std::to_string(rules::spell));
    // The tagger points into res; sharing ownership keeps it alive as long as the tagger.
    std::shared_ptr<const Resources> shared = res;
    auto tagger = std::shared_ptr<const Tagger>(
        new RuleTagger(shared->lexicons, std::move(disabled_rules)),
        [keep = shared](const Tagger* t) { delete t; });
    return Pipeline(shared, std::move(tagger));
}

Pipeline Pipeline::load_default(std::set<int> disabled_rules) {
    return load(default_catalog_path(), default_lexicon_dir(), std::move(disabled_rules));
}

Pipeline Pipeline::with_tagger(std::shared_ptr<const Tagger> tagger) const {
    return Pipeline(resources_, std::move(tagger));
}

std::vector<Correction> Pipeline::grammar_corrections(std::string_view text) const {
    return run_grammar_pass(text, *tagger_, resources_->lexicons.abbreviations, resources_->catalog);
}

AnnotatedDocument Pipeline::correct(std::string_view text) const {
    auto corrections = grammar_corrections(text);
    auto spell = run_spell_pass(text, corrections, resources_->spell, resources_->lexicons.abbreviations);
    corrections.insert(corrections.end(), spell.begin(), spell.end());
    std::sort(corrections.begin(), corrections.end(),
              [](const Correction& a, const Correction& b) { return a.span_start < b.span_start; });
    auto doc = merge_and_offset(text, corrections, resources_->catalog);
    doc.engine_version = std::string(engine_version());
    doc.lexicon_version = resources_->lexicons.version;
    return doc;
}

const RuleCatalog& Pipeline::catalog() const { return resources_->catalog; }
const LexiconSet& Pipeline::lexicons() const { return resources_->lexicons; }
const SpellLexicon& Pipeline::spell_lexicon() const { return resources_->spell; }
const Tagger& Pipeline::tagger() const { return *tagger_; }
std::string Pipeline::lexicon_version() const { return resources_->lexicons.version; }

}  // namespace imla
