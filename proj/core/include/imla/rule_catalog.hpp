#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace imla {

struct RuleSpec {
    int rule_id = 0;
    std::string mnemonic;
    std::string category;
    std::string color;
    std::string description_tr;
    std::string description_en;
    std::string example_before;
    std::string example_after;

    bool operator==(const RuleSpec&) const = default;
};

/// Named colors a rule may use.
const std::vector<std::string>& color_palette();

class RuleCatalog {
public:
    RuleCatalog() = default;
    /// Validates the invariants (unique ids/mnemonics, palette colors, one color per category).
    RuleCatalog(std::vector<RuleSpec> rules, std::string version);

    const std::vector<RuleSpec>& rules() const noexcept { return rules_; }
    const std::string& version() const noexcept { return version_; }

    /// Throws NotFoundError.
    const RuleSpec& describe(int rule_id) const;
    const RuleSpec& by_mnemonic(std::string_view mnemonic) const;
    bool contains(int rule_id) const { return by_id_.count(rule_id) != 0; }

    /// Same TSV format load_catalog reads.
    std::string serialize() const;

    bool operator==(const RuleCatalog& other) const {
        return rules_ == other.rules_ && version_ == other.version_;
    }

private:
    std::vector<RuleSpec> rules_;
    std::string version_;
    std::map<int, std::size_t> by_id_;
    std::map<std::string, std::size_t, std::less<>> by_mnemonic_;
};

/// Parses catalog TSV text. `origin` names the source in error messages.
RuleCatalog parse_catalog(std::string_view text, std::string_view origin = "<catalog>");

/// Throws CatalogError with the offending line number.
RuleCatalog load_catalog(const std::filesystem::path& path);

/// Lowercase, non-alphanumeric runs collapsed to '-': "-DE/-DA" -> "de-da", "LIGHT VERB" -> "light-verb".
std::string category_slug(std::string_view category);

}  // namespace imla
