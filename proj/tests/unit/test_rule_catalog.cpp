#include <gtest/gtest.h>

#include <map>

#include "imla/errors.hpp"
#include "imla/grammar_engine.hpp"
#include "imla/pipeline.hpp"
#include "imla/rule_catalog.hpp"

using namespace imla;

namespace {

const RuleCatalog& catalog() {
    static const RuleCatalog c = load_catalog(default_catalog_path());
    return c;
}

const char* kHeader =
    "# version: 1\n# rule_id\tmnemonic\tcategory\tcolor\tdescription_tr\tdescription_en\texample_before\texample_after\n";

}  // namespace

TEST(RuleCatalog, Rule1) {
    auto const& r = catalog().describe(1);
    EXPECT_EQ(r.mnemonic, "CONJ_DE_SEP");
    EXPECT_EQ(r.description_en, "Conjunction “-de/-da” is written separately.");
    EXPECT_EQ(r.color, "red");
    EXPECT_EQ(r.example_before, "oğlunada");
    EXPECT_EQ(r.example_after, "oğluna da");
}

TEST(RuleCatalog, Rule22) {
    auto const& r = catalog().describe(22);
    EXPECT_EQ(r.mnemonic, "PRONOUN_EXC");
    EXPECT_EQ(r.color, "orange");
    EXPECT_EQ(r.example_before, "hiç bir");
    EXPECT_EQ(r.example_after, "hiçbir");
}

TEST(RuleCatalog, DescribeExamples) {
    EXPECT_NE(catalog().describe(13).description_en.find("undergo haplology"), std::string::npos);
    EXPECT_EQ(catalog().describe(17).category, "LIGHT VERB");
    EXPECT_EQ(catalog().describe(17).color, "blue");
    EXPECT_THROW(catalog().describe(999), NotFoundError);
    EXPECT_EQ(catalog().by_mnemonic("SPELL").rule_id, 200);
}

TEST(RuleCatalog, SevenCategoryColors) {
    std::map<std::string, std::string> const want{
        {"-DE/-DA", "red"},  {"-KI", "navy"},       {"FOREIGN", "purple"}, {"BISYL", "pink"},
        {"LIGHT VERB", "blue"}, {"COMPOUND", "turquoise"}, {"SINGLE", "orange"}};
    for (auto const& r : catalog().rules()) {
        auto const it = want.find(r.category);
        if (it != want.end()) {
            EXPECT_EQ(r.color, it->second) << r.rule_id;
        }
    }
    EXPECT_EQ(catalog().describe(102).color, "green");
    EXPECT_EQ(catalog().describe(101).color, "blue");
    EXPECT_EQ(catalog().describe(103).color, "brown");
    EXPECT_EQ(catalog().describe(104).color, "teal");
}

TEST(RuleCatalog, EveryEngineRuleResolves) {
    for (int id : RuleTagger::rule_ids()) EXPECT_NO_THROW(catalog().describe(id));
    EXPECT_NO_THROW(catalog().describe(rules::spell));
}

TEST(RuleCatalog, SerializeRoundTrip) {
    auto const again = parse_catalog(catalog().serialize());
    EXPECT_EQ(again, catalog());
    EXPECT_EQ(again.version(), catalog().version());
}

TEST(RuleCatalog, DuplicateIdNamesLines) {
    std::string text = kHeader;
    text += "7\tA\t-KI\tnavy\tt\te\tx\ty\n";
    text += "7\tB\t-KI\tnavy\tt\te\tx\ty\n";
    try {
        parse_catalog(text, "cat.tsv");
        FAIL() << "expected CatalogError";
    } catch (const CatalogError& e) {
        std::string const msg = e.what();
        EXPECT_NE(msg.find("cat.tsv:4"), std::string::npos) << msg;
        EXPECT_NE(msg.find("3"), std::string::npos) << msg;
    }
}

TEST(RuleCatalog, RejectsMalformedRows) {
    std::string base = kHeader;
    EXPECT_THROW(parse_catalog(base + "1\tA\t-KI\tmauve\tt\te\tx\ty\n"), CatalogError);
    EXPECT_THROW(parse_catalog(base + "1\tA\t-KI\tred\tt\te\tx\ty\n"), CatalogError);
    EXPECT_THROW(parse_catalog(base + "1\tA\t-KI\tnavy\tt\te\tx\n"), CatalogError);
    EXPECT_THROW(parse_catalog(base + "x\tA\t-KI\tnavy\tt\te\tx\ty\n"), CatalogError);
    EXPECT_THROW(parse_catalog(base + "1\tA\t-KI\tnavy\tt\te\tx\tx\n"), CatalogError);
    EXPECT_THROW(parse_catalog(base + "1\tA\t-KI\tnavy\tt\te\tx\ty\n2\tA\t-KI\tnavy\tt\te\tx\ty\n"), CatalogError);
    EXPECT_THROW(load_catalog("/nonexistent/catalog.tsv"), CatalogError);
}

TEST(RuleCatalog, PaletteHasElevenColors) {
    EXPECT_EQ(color_palette().size(), 11u);
    EXPECT_EQ(category_slug("LIGHT VERB"), category_slug("LIGHT VERB"));
    EXPECT_EQ(category_slug("-DE/-DA").find(' '), std::string::npos);
}
