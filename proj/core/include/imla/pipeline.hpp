#pragma once

#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "imla/annotator.hpp"
#include "imla/grammar_engine.hpp"
#include "imla/lexicon.hpp"
#include "imla/rule_catalog.hpp"
#include "imla/spell_engine.hpp"

namespace imla {

/// Library version string.
std::string_view engine_version();

/// Bundled data: $IMLA_DATA_DIR, else the source tree's data/, else the installed share dir.
std::filesystem::path default_data_dir();
std::filesystem::path default_catalog_path();
std::filesystem::path default_lexicon_dir();

/// The full correction path shared by the CLI, the service and the harness:
/// segmentation -> grammar pass -> spell pass -> annotation. Cheap to copy; immutable and
/// safe to use from many threads.
class Pipeline {
public:
    /// Throws CatalogError / LexiconError.
    static Pipeline load(const std::filesystem::path& catalog_path, const std::filesystem::path& lexicon_dir,
                         std::set<int> disabled_rules = {});
    static Pipeline load_default(std::set<int> disabled_rules = {});

    /// Swaps in another tagger over the same catalog and lexicons.
    Pipeline with_tagger(std::shared_ptr<const Tagger> tagger) const;

    AnnotatedDocument correct(std::string_view text) const;
    std::vector<Correction> grammar_corrections(std::string_view text) const;

    const RuleCatalog& catalog() const;
    const LexiconSet& lexicons() const;
    const SpellLexicon& spell_lexicon() const;
    const Tagger& tagger() const;
    std::string lexicon_version() const;

private:
    struct Resources;
    Pipeline(std::shared_ptr<const Resources> resources, std::shared_ptr<const Tagger> tagger);

    std::shared_ptr<const Resources> resources_;
    std::shared_ptr<const Tagger> tagger_;
};

}  // namespace imla
