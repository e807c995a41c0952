#include "imla/spell_engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "imla/errors.hpp"
#include "imla/lexicon.hpp"
#include "imla/morphophonology.hpp"
#include "imla/utf8.hpp"

namespace imla {
namespace {

constexpr double kEps = 1e-9;

double substitution_cost(char32_t a, char32_t b, const SpellCosts& costs) {
    if (a == b) return 0;
    return is_diacritic_pair(a, b) ? costs.diacritic_substitution : costs.substitution;
}

double insertion_cost(char32_t c, const SpellCosts& costs) {
    return phon::is_vowel(c) ? costs.vowel_insertion : costs.insertion;
}

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool typo_eligible_shape(std::u32string_view s) {
    std::size_t upper = 0;
    for (char32_t c : s) {
        if (is_digit(c) || c == U'\'' || c == U'’' || c == U'-') return false;
        if (phon::is_upper(c)) ++upper;
    }
    return upper < 2 || upper != s.size();
}

std::vector<bool> overlap_mask(const std::vector<Token>& tokens, const std::vector<Correction>& corrections) {
    std::vector<bool> mask(tokens.size(), false);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (auto const& c : corrections) {
            if (tokens[i].start < c.span_end && c.span_start < tokens[i].end) {
                mask[i] = true;
                break;
            }
        }
    }
    return mask;
}

std::vector<Correction> capitalization(const std::vector<Token>& tokens, const std::vector<bool>& skip,
                                       const SpellLexicon& lexicon) {
    std::vector<Correction> out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (skip[i] || !is_word_token(tokens[i])) continue;
        std::u32string_view const s = tokens[i].surface;
        auto const cut = std::min(s.find(U'\''), s.find(U'’'));
        auto const stem = s.substr(0, cut);
        if (stem.empty()) continue;
        auto const canonical = lexicon.proper_noun(phon::lower(stem));
        if (!canonical || canonical->front() == stem.front()) continue;
        std::u32string replacement = *canonical;
        if (cut != std::u32string_view::npos) replacement += s.substr(cut);
        out.push_back({tokens[i].start, tokens[i].end, utf8::encode(replacement), rules::spell, Stage::spell});
    }
    return out;
}

std::vector<Correction> typos(const std::vector<Token>& tokens, const std::vector<bool>& skip,
                              const SpellLexicon& lexicon) {
    std::vector<Correction> out;
    std::unordered_map<std::u32string, std::optional<SpellCandidate>> memo;
    std::size_t sentence = static_cast<std::size_t>(-1);
    bool seen_word = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto const& tok = tokens[i];
        if (tok.sentence_index != sentence) {
            sentence = tok.sentence_index;
            seen_word = false;
        }
        if (!is_word_token(tok)) continue;
        bool const initial = !seen_word;
        seen_word = true;
        if (skip[i]) continue;
        std::u32string_view const s = tok.surface;
        if (s.size() < lexicon.costs().min_token_length || !typo_eligible_shape(s)) continue;
        if (phon::is_upper(s.front()) && !initial) continue;
        auto const lower = phon::lower(s);
        if (lexicon.known_word(lower) || lexicon.proper_noun(lower)) continue;
        auto it = memo.find(lower);
        if (it == memo.end()) it = memo.emplace(lower, lexicon.best_correction(lower)).first;
        if (!it->second) continue;
        auto const replacement = carry_case(s, it->second->word);
        if (replacement == s) continue;
        out.push_back({tok.start, tok.end, utf8::encode(replacement), rules::spell, Stage::spell});
    }
    return out;
}

}  // namespace

SpellCosts SpellCosts::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LexiconError(path.string() + ": cannot open spell config");
    SpellCosts c;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto const hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto const eq = line.find('=');
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (strip(line).empty()) continue;
        auto const where = path.string() + ":" + std::to_string(line_no) + ": ";
        if (eq == std::string::npos) throw LexiconError(where + "expected key = value");
        auto const key = strip(line.substr(0, eq));
        auto const raw = strip(line.substr(eq + 1));
        double value = 0;
        try {
            std::size_t used = 0;
            value = std::stod(raw, &used);
            if (used != raw.size()) throw std::invalid_argument(raw);
        } catch (const std::exception&) {
            throw LexiconError(where + "not a number: " + raw);
        }
        if (!(value > 0)) throw LexiconError(where + key + " must be positive");
        if (key == "substitution") c.substitution = value;
        else if (key == "diacritic_substitution") c.diacritic_substitution = value;
        else if (key == "transposition") c.transposition = value;
        else if (key == "insertion") c.insertion = value;
        else if (key == "vowel_insertion") c.vowel_insertion = value;
        else if (key == "deletion") c.deletion = value;
        else if (key == "max_distance") c.max_distance = value;
        else if (key == "threshold") c.threshold = value;
        else if (key == "min_token_length") c.min_token_length = static_cast<std::size_t>(value);
        else throw LexiconError(where + "unknown key " + key);
    }
    if (c.diacritic_substitution >= c.substitution)
        throw LexiconError(path.string() + ": diacritic_substitution must be below substitution");
    return c;
}

bool is_diacritic_pair(char32_t a, char32_t b) {
    static const std::pair<char32_t, char32_t> pairs[] = {
        {U'ı', U'i'}, {U's', U'ş'}, {U'c', U'ç'}, {U'g', U'ğ'}, {U'o', U'ö'}, {U'u', U'ü'},
    };
    for (auto [x, y] : pairs) {
        if ((a == x && b == y) || (a == y && b == x)) return true;
    }
    return false;
}

double weighted_distance(std::u32string_view t, std::u32string_view w, const SpellCosts& costs) {
    std::size_t const n = t.size();
    std::size_t const m = w.size();
    std::vector<std::vector<double>> d(n + 1, std::vector<double>(m + 1, 0));
    for (std::size_t i = 1; i <= n; ++i) d[i][0] = d[i - 1][0] + costs.deletion;
    for (std::size_t j = 1; j <= m; ++j) d[0][j] = d[0][j - 1] + insertion_cost(w[j - 1], costs);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            double best = std::min({d[i - 1][j] + costs.deletion, d[i][j - 1] + insertion_cost(w[j - 1], costs),
                                    d[i - 1][j - 1] + substitution_cost(t[i - 1], w[j - 1], costs)});
            if (i > 1 && j > 1 && t[i - 1] == w[j - 2] && t[i - 2] == w[j - 1] && t[i - 1] != t[i - 2])
                best = std::min(best, d[i - 2][j - 2] + costs.transposition);
            d[i][j] = best;
        }
    }
    return d[n][m];
}

SpellLexicon::SpellLexicon(const std::vector<std::string>& wordlist, const std::vector<std::string>& gazetteer,
                           SpellCosts costs)
    : costs_(costs) {
    nodes_.emplace_back();
    words_.reserve(wordlist.size());
    for (auto const& raw : wordlist) {
        auto w = phon::lower(utf8::decode(raw));
        if (w.empty() || !words_.insert(w).second) continue;
        insert(w);
    }
    for (auto const& raw : gazetteer) {
        auto name = utf8::decode(raw);
        if (name.empty()) continue;
        if (!phon::is_upper(name.front()))
            throw LexiconError("gazetteer entry does not start with an uppercase letter: " + raw);
        gazetteer_.emplace(phon::lower(name), std::move(name));
    }
}

SpellLexicon SpellLexicon::load(const std::filesystem::path& dir) {
    return SpellLexicon(read_lines(dir / "wordlist.txt"), read_lines(dir / "gazetteer.txt"),
                        SpellCosts::load(dir / "spell.conf"));
}

void SpellLexicon::insert(std::u32string_view word) {
    std::uint32_t node = 0;
    for (char32_t c : word) {
        std::uint32_t child = nodes_[node].first_child;
        while (child != 0 && nodes_[child].c != c) child = nodes_[child].next_sibling;
        if (child == 0) {
            child = static_cast<std::uint32_t>(nodes_.size());
            Node fresh;
            fresh.c = c;
            fresh.next_sibling = nodes_[node].first_child;
            nodes_.push_back(fresh);
            nodes_[node].first_child = child;
        }
        node = child;
    }
    nodes_[node].terminal = true;
}

bool SpellLexicon::known_word(std::u32string_view lower_word) const {
    return words_.count(std::u32string(lower_word)) != 0;
}

std::optional<std::u32string> SpellLexicon::proper_noun(std::u32string_view lower_word) const {
    auto const it = gazetteer_.find(std::u32string(lower_word));
    if (it == gazetteer_.end()) return std::nullopt;
    return it->second;
}

// Depth-first walk of the trie carrying one edit-distance row per depth; subtrees whose
// row minimum exceeds max_distance are pruned.
template <typename Visit>
void SpellLexicon::search(std::u32string_view t, Visit&& visit) const {
    std::size_t const n = t.size();
    double const limit = costs_.max_distance + kEps;
    std::vector<std::vector<double>> rows(1, std::vector<double>(n + 1));
    for (std::size_t j = 1; j <= n; ++j) rows[0][j] = rows[0][j - 1] + costs_.deletion;
    std::u32string path;

    struct Frame {
        std::uint32_t node;
        std::size_t depth;
    };
    std::vector<Frame> stack;
    for (auto c = nodes_[0].first_child; c != 0; c = nodes_[c].next_sibling) stack.push_back({c, 1});
    while (!stack.empty()) {
        auto const [node, depth] = stack.back();
        stack.pop_back();
        path.resize(depth - 1);
        char32_t const ch = nodes_[node].c;
        path.push_back(ch);
        if (rows.size() <= depth) rows.emplace_back(n + 1);
        auto const& prev = rows[depth - 1];
        auto& row = rows[depth];
        double const ins = insertion_cost(ch, costs_);
        row[0] = prev[0] + ins;
        double low = row[0];
        for (std::size_t j = 1; j <= n; ++j) {
            double best = std::min({prev[j] + ins, row[j - 1] + costs_.deletion,
                                    prev[j - 1] + substitution_cost(t[j - 1], ch, costs_)});
            if (depth > 1 && j > 1 && t[j - 1] == path[depth - 2] && t[j - 2] == ch && t[j - 1] != t[j - 2])
                best = std::min(best, rows[depth - 2][j - 2] + costs_.transposition);
            row[j] = best;
            low = std::min(low, best);
        }
        if (low > limit) continue;
        if (nodes_[node].terminal && row[n] <= limit) visit(path, row[n]);
        for (auto c = nodes_[node].first_child; c != 0; c = nodes_[c].next_sibling) stack.push_back({c, depth + 1});
    }
}

std::vector<SpellCandidate> SpellLexicon::candidates(std::u32string_view lower_token) const {
    std::vector<SpellCandidate> out;
    search(lower_token, [&](const std::u32string& word, double cost) { out.push_back({word, cost}); });
    std::sort(out.begin(), out.end(), [](const SpellCandidate& a, const SpellCandidate& b) {
        return a.cost != b.cost ? a.cost < b.cost : a.word < b.word;
    });
    return out;
}

std::optional<SpellCandidate> SpellLexicon::best_correction(std::u32string_view lower_token) const {
    std::optional<SpellCandidate> best;
    bool tie = false;
    search(lower_token, [&](const std::u32string& word, double cost) {
        if (!best || cost < best->cost - kEps) {
            best = SpellCandidate{word, cost};
            tie = false;
        } else if (std::abs(cost - best->cost) <= kEps) {
            tie = true;
        }
    });
    if (!best || tie || !(best->cost < costs_.threshold - kEps)) return std::nullopt;
    return best;
}

std::vector<Correction> capitalize_proper_nouns(const std::vector<Token>& tokens, const SpellLexicon& lexicon) {
    return capitalization(tokens, std::vector<bool>(tokens.size(), false), lexicon);
}

std::vector<Correction> normalize_typos(const std::vector<Token>& tokens, const SpellLexicon& lexicon) {
    return typos(tokens, std::vector<bool>(tokens.size(), false), lexicon);
}

std::vector<Correction> run_spell_pass(std::string_view text, const std::vector<Correction>& grammar_corrections,
                                       const SpellLexicon& lexicon, const Abbreviations& abbreviations) {
    auto const decoded = utf8::decode(text);
    auto const tokens = tokenize_document(decoded, abbreviations);
    auto skip = overlap_mask(tokens, grammar_corrections);
    auto out = capitalization(tokens, skip, lexicon);
    auto const capitalized = overlap_mask(tokens, out);
    for (std::size_t i = 0; i < skip.size(); ++i) skip[i] = skip[i] || capitalized[i];
    auto more = typos(tokens, skip, lexicon);
    out.insert(out.end(), more.begin(), more.end());
    std::sort(out.begin(), out.end(),
              [](const Correction& a, const Correction& b) { return a.span_start < b.span_start; });
    return out;
}

}  // namespace imla
