#include "imla/rule_catalog.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "imla/errors.hpp"
#include "imla/morphophonology.hpp"
#include "imla/utf8.hpp"

namespace imla {
namespace {

constexpr std::string_view kHeader =
    "# rule_id\tmnemonic\tcategory\tcolor\tdescription_tr\tdescription_en\texample_before\texample_after";

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        auto const tab = line.find('\t', pos);
        out.push_back(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
        if (tab == std::string_view::npos) break;
        pos = tab + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Where each rule came from, for error messages.
struct Located {
    RuleSpec spec;
    std::size_t line;
};

[[noreturn]] void fail(std::string_view origin, std::size_t line, const std::string& what) {
    throw CatalogError(std::string(origin) + ":" + std::to_string(line) + ": " + what);
}

// Colors the UI legend relies on for the core categories.
const std::map<std::string, std::string, std::less<>> kFixedColors{
    {"-DE/-DA", "red"},  {"-KI", "navy"},       {"FOREIGN", "purple"}, {"BISYL", "pink"},
    {"LIGHT VERB", "blue"}, {"COMPOUND", "turquoise"}, {"SINGLE", "orange"},
};

void validate(const std::vector<Located>& rules, std::string_view origin) {
    auto const& palette = color_palette();
    std::map<int, std::size_t> ids;
    std::map<std::string, std::size_t> mnemonics;
    std::map<std::string, std::pair<std::string, std::size_t>> category_color;
    for (auto const& [r, line] : rules) {
        if (r.rule_id <= 0) fail(origin, line, "rule_id must be positive");
        if (r.mnemonic.empty()) fail(origin, line, "empty mnemonic");
        for (char c : r.mnemonic) {
            if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'))
                fail(origin, line, "mnemonic must be uppercase: " + r.mnemonic);
        }
        if (std::find(palette.begin(), palette.end(), r.color) == palette.end())
            fail(origin, line, "unknown color name: " + r.color);
        if (r.example_before == r.example_after)
            fail(origin, line, "example_before equals example_after");
        if (auto [it, fresh] = ids.emplace(r.rule_id, line); !fresh)
            fail(origin, line, "duplicate rule_id " + std::to_string(r.rule_id) + " (first on line "
                                   + std::to_string(it->second) + ")");
        if (auto [it, fresh] = mnemonics.emplace(r.mnemonic, line); !fresh)
            fail(origin, line, "duplicate mnemonic " + r.mnemonic + " (first on line "
                                   + std::to_string(it->second) + ")");
        if (auto const fixed = kFixedColors.find(r.category); fixed != kFixedColors.end() && fixed->second != r.color)
            fail(origin, line, "category " + r.category + " must be " + fixed->second + ", not " + r.color);
        auto [it, fresh] = category_color.emplace(r.category, std::pair{r.color, line});
        if (!fresh && it->second.first != r.color)
            fail(origin, line, "category " + r.category + " is " + it->second.first + " on line "
                                   + std::to_string(it->second.second) + " but " + r.color + " here");
    }
}

}  // namespace

const std::vector<std::string>& color_palette() {
    static const std::vector<std::string> palette = {
        "red", "navy", "purple", "pink", "blue", "turquoise",
        "orange", "green", "brown", "teal", "gray",
    };
    return palette;
}

RuleCatalog::RuleCatalog(std::vector<RuleSpec> rules, std::string version)
    : rules_(std::move(rules)), version_(std::move(version)) {
    std::vector<Located> located;
    for (std::size_t i = 0; i < rules_.size(); ++i) located.push_back({rules_[i], i + 1});
    validate(located, "<rules>");
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        by_id_[rules_[i].rule_id] = i;
        by_mnemonic_[rules_[i].mnemonic] = i;
    }
}

const RuleSpec& RuleCatalog::describe(int rule_id) const {
    auto const it = by_id_.find(rule_id);
    if (it == by_id_.end()) throw NotFoundError("unknown rule_id " + std::to_string(rule_id));
    return rules_[it->second];
}

const RuleSpec& RuleCatalog::by_mnemonic(std::string_view mnemonic) const {
    auto const it = by_mnemonic_.find(mnemonic);
    if (it == by_mnemonic_.end()) throw NotFoundError("unknown mnemonic " + std::string(mnemonic));
    return rules_[it->second];
}

std::string RuleCatalog::serialize() const {
    std::ostringstream out;
    out << "# version: " << version_ << '\n' << kHeader << '\n';
    for (auto const& r : rules_) {
        out << r.rule_id << '\t' << r.mnemonic << '\t' << r.category << '\t' << r.color << '\t'
            << r.description_tr << '\t' << r.description_en << '\t' << r.example_before << '\t'
            << r.example_after << '\n';
    }
    return out.str();
}

RuleCatalog parse_catalog(std::string_view text, std::string_view origin) {
    std::vector<Located> rules;
    std::string version = "0";
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto const nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;
        if (line.front() == '#') {
            auto body = trim(line.substr(1));
            if (body.rfind("version:", 0) == 0) version = std::string(trim(body.substr(8)));
            continue;
        }
        if (!utf8::is_valid(line)) fail(origin, line_no, "invalid UTF-8");
        auto const cols = split_tabs(line);
        if (cols.size() != 8)
            fail(origin, line_no, "expected 8 tab-separated columns, got " + std::to_string(cols.size()));
        RuleSpec r;
        auto const id = trim(cols[0]);
        auto [end, ec] = std::from_chars(id.data(), id.data() + id.size(), r.rule_id);
        if (ec != std::errc{} || end != id.data() + id.size())
            fail(origin, line_no, "rule_id is not an integer: " + std::string(id));
        r.mnemonic = trim(cols[1]);
        r.category = trim(cols[2]);
        r.color = trim(cols[3]);
        r.description_tr = trim(cols[4]);
        r.description_en = trim(cols[5]);
        r.example_before = trim(cols[6]);
        r.example_after = trim(cols[7]);
        rules.push_back({std::move(r), line_no});
    }
    validate(rules, origin);
    std::vector<RuleSpec> specs;
    specs.reserve(rules.size());
    for (auto& l : rules) specs.push_back(std::move(l.spec));
    return RuleCatalog(std::move(specs), std::move(version));
}

RuleCatalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CatalogError(path.string() + ": cannot open catalog file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str(), path.string());
}

std::string category_slug(std::string_view category) {
    auto const text = phon::lower(utf8::decode(category));
    std::u32string out;
    bool dash = false;
    for (char32_t c : text) {
        bool const keep = (c >= U'0' && c <= U'9') || phon::is_letter(c);
        if (keep) {
            if (dash && !out.empty()) out.push_back(U'-');
            out.push_back(c);
            dash = false;
        } else {
            dash = true;
        }
    }
    return utf8::encode(out);
}

}  // namespace imla
