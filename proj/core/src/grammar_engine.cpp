#include "imla/grammar_engine.hpp"

#include <algorithm>

#include "imla/errors.hpp"
#include "imla/morphophonology.hpp"
#include "imla/utf8.hpp"

namespace imla {
namespace {

using std::u32string;
using std::u32string_view;

bool ends_with(u32string_view s, u32string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool starts_with(u32string_view s, u32string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

bool has_joiner(u32string_view s) {
    return std::any_of(s.begin(), s.end(), [](char32_t c) { return is_apostrophe(c) || c == U'-'; });
}

bool is_high_vowel(char32_t c) { return c == U'ı' || c == U'i' || c == U'u' || c == U'ü'; }

bool is_low_unrounded(char32_t c) { return c == U'a' || c == U'e'; }

bool all_caps(u32string_view s) {
    std::size_t letters = 0;
    for (char32_t c : s) {
        if (phon::is_lower(c)) return false;
        if (phon::is_upper(c)) ++letters;
    }
    return letters >= 2;
}

bool adjacent_words(const std::vector<Token>& tokens, std::size_t i) {
    if (i + 1 >= tokens.size()) return false;
    auto const& a = tokens[i];
    auto const& b = tokens[i + 1];
    return a.sentence_index == b.sentence_index && b.start > a.end && is_word_token(a) && is_word_token(b);
}

// Longest key of `map` that is a prefix of `word`.
template <typename Map>
auto longest_prefix(const Map& map, u32string_view word) {
    for (std::size_t n = word.size(); n > 0; --n) {
        auto const it = map.find(word.substr(0, n));
        if (it != map.end()) return it;
    }
    return map.end();
}

bool light_verb_tail(const std::vector<LightVerbForm>& forms, u32string_view tail, bool et_only) {
    for (auto const& f : forms) {
        if (et_only && f.verb != U"et") continue;
        if (f.exact ? tail == f.prefix : starts_with(tail, f.prefix)) return true;
    }
    return false;
}

bool finite_ki_host(u32string_view r) {
    static const u32string_view patterns[] = {
        U"mış", U"miş", U"muş", U"müş", U"dı", U"di", U"du", U"dü", U"tı", U"ti", U"tu", U"tü",
        U"yor", U"acak", U"ecek", U"sa", U"se",
    };
    if (r.size() < 3) return false;
    for (auto p : patterns) {
        if (ends_with(r, p)) return true;
    }
    return r.back() == U'r' && phon::is_vowel(r[r.size() - 2]);
}

// Person ending template with H replaced by `vowel`.
u32string expand_person(u32string_view tmpl, char32_t vowel) {
    u32string out(tmpl);
    for (auto& c : out) {
        if (c == U'H') c = vowel;
    }
    return out;
}

// Second word of a two-word join: lowercased initial unless the first word is all caps.
u32string joined_tail(u32string_view first, u32string_view second) {
    u32string out(second);
    if (!out.empty() && !all_caps(first)) out[0] = phon::to_lower(out[0]);
    return out;
}

// Suffix harmony follows the canonical sample when it has one: loans like "kalp" take
// front suffixes ("kalbi") despite a back stem vowel.
std::optional<char32_t> harmony_vowel(const HaplologyStem& h) {
    for (char32_t c : u32string_view(h.canonical_sample).substr(std::min(h.stem.size() - 1, h.canonical_sample.size()))) {
        if (phon::is_vowel(c)) return c;
    }
    return phon::last_vowel(h.stem);
}

}  // namespace

std::string_view stage_name(Stage stage) { return stage == Stage::grammar ? "grammar" : "spell"; }

u32string carry_case(u32string_view original, u32string_view replacement) {
    if (original.empty() || replacement.empty()) return u32string(replacement);
    if (all_caps(original)) return phon::upper(replacement);
    if (phon::is_upper(original.front())) return phon::capitalize(replacement);
    return u32string(replacement);
}

RuleTagger::RuleTagger(const LexiconSet& lexicons, std::set<int> disabled_rules)
    : lex_(lexicons), disabled_(std::move(disabled_rules)) {}

const std::vector<int>& RuleTagger::rule_ids() {
    static const std::vector<int> ids = {
        rules::conj_de_sep, rules::conj_ki_sep, rules::foreign_r1, rules::bisyll_hapl_vow,
        rules::light_verb_sep, rules::comp_verb_adj, rules::pronoun_exc, rules::light_verb_adj,
        rules::ques_clitic_sep, rules::redup_sep, rules::adv_vowel_restore,
    };
    return ids;
}

std::optional<RuleTagger::Match> RuleTagger::match(int rule_id, const std::vector<Token>& tokens,
                                                   std::size_t i) const {
    auto const& tok = tokens[i];
    if (!is_word_token(tok)) return std::nullopt;
    u32string_view const s = tok.surface;
    u32string const w = phon::lower(s);

    auto split_at = [&](std::size_t cut) {
        return Match{1, u32string(s.substr(0, cut)) + U" " + u32string(s.substr(cut))};
    };

    switch (rule_id) {
        case rules::conj_de_sep: {
            if (w.size() < 3 || !(ends_with(w, U"de") || ends_with(w, U"da"))) break;
            if (lex_.conj_de_exceptions.count(w)) break;
            u32string_view const suffix = u32string_view(w).substr(w.size() - 2);
            u32string_view const rest = u32string_view(w).substr(0, w.size() - 2);
            if (is_apostrophe(rest.back())) {
                auto const host = rest.substr(0, rest.size() - 1);
                if (host.empty() || has_joiner(host) || !phon::last_vowel(host)) break;
                if (lex_.conj_de_locative_hosts.count(host)) break;
                if (phon::harmonize_de(host) != suffix) break;
                return Match{1, u32string(s.substr(0, host.size())) + U" " + u32string(s.substr(s.size() - 2))};
            }
            if (has_joiner(rest) || !phon::last_vowel(rest)) break;
            if (phon::harmonize_de(rest) != suffix) break;
            bool fires = lex_.conj_de_hosts.count(rest) != 0;
            if (!fires && rest.size() >= 5 && is_low_unrounded(rest.back())) {
                char32_t const buffer = rest[rest.size() - 2];
                char32_t const before = rest[rest.size() - 3];
                fires = (buffer == U'n' && is_high_vowel(before)) || (buffer == U'y' && phon::is_vowel(before));
            }
            if (fires) return split_at(rest.size());
            break;
        }
        case rules::conj_ki_sep: {
            if (w.size() < 3 || !ends_with(w, U"ki") || has_joiner(w)) break;
            if (lex_.conj_ki_exceptions.count(w)) break;
            auto const rest = u32string_view(w).substr(0, w.size() - 2);
            if (lex_.conj_ki_hosts.count(rest) || finite_ki_host(rest)) return split_at(rest.size());
            break;
        }
        case rules::foreign_r1: {
            auto const it = longest_prefix(lex_.foreign_r1, w);
            if (it == lex_.foreign_r1.end()) break;
            auto const n = it->first.size();
            return Match{1, carry_case(s.substr(0, n), it->second) + u32string(s.substr(n))};
        }
        case rules::bisyll_hapl_vow: {
            HaplologyStem const* best = nullptr;
            for (auto const& h : lex_.haplology_stems) {
                if (w.size() <= h.stem.size() || !starts_with(w, h.stem)) continue;
                if (best && best->stem.size() >= h.stem.size()) continue;
                auto const v = harmony_vowel(h);
                char32_t const first = w[h.stem.size()];
                if (!v || (first != phon::four_way(*v) && first != phon::two_way(*v))) continue;
                best = &h;
            }
            if (!best) break;
            u32string base = best->stem;
            if (best->haplology) base = phon::drop_haplology_vowel(base);
            if (best->voicing) base = phon::voice_final_consonant(base);
            auto const n = best->stem.size();
            return Match{1, carry_case(s.substr(0, n), base) + u32string(s.substr(n))};
        }
        case rules::light_verb_sep: {
            for (std::size_t n = w.size() - 1; n > 0; --n) {
                auto const noun = u32string_view(w).substr(0, n);
                if (!lex_.light_verb_sep.count(noun)) continue;
                if (light_verb_tail(lex_.light_verb_forms, u32string_view(w).substr(n), false)) return split_at(n);
            }
            break;
        }
        case rules::comp_verb_adj: {
            if (!adjacent_words(tokens, i) || !lex_.comp_verb_converbs.count(w)) break;
            auto const next = phon::lower(tokens[i + 1].surface);
            for (auto const& [stem, tails] : lex_.comp_verb_aux) {
                if (!starts_with(next, stem)) continue;
                auto const tail = u32string_view(next).substr(stem.size());
                bool const ok = std::any_of(tails.begin(), tails.end(),
                                            [&](const u32string& t) { return starts_with(tail, t); });
                if (ok) return Match{2, u32string(s) + joined_tail(s, tokens[i + 1].surface)};
            }
            break;
        }
        case rules::pronoun_exc: {
            if (!adjacent_words(tokens, i)) break;
            auto const next = phon::lower(tokens[i + 1].surface);
            auto const it = lex_.pronoun_exc.find(w + U" " + next);
            if (it == lex_.pronoun_exc.end()) break;
            return Match{2, carry_case(s, it->second)};
        }
        case rules::light_verb_adj: {
            if (!adjacent_words(tokens, i)) break;
            auto const it = lex_.light_verb_adj.find(w);
            if (it == lex_.light_verb_adj.end()) break;
            auto const next = phon::lower(tokens[i + 1].surface);
            if (!light_verb_tail(lex_.light_verb_forms, next, true)) break;
            return Match{2, carry_case(s, it->second) + joined_tail(s, tokens[i + 1].surface)};
        }
        case rules::ques_clitic_sep: {
            if (has_joiner(w)) break;
            for (std::size_t k = 4; k + 2 <= w.size(); ++k) {
                if (w[k] != U'm' || !is_high_vowel(w[k + 1])) continue;
                auto const verb = u32string_view(w).substr(0, k);
                auto const v = phon::last_vowel(verb);
                if (!v || w[k + 1] != phon::four_way(*v)) continue;
                auto const tense = std::find_if(lex_.ques_tenses.begin(), lex_.ques_tenses.end(),
                                                [&](const CliticTense& t) { return ends_with(verb, t.value); });
                if (tense == lex_.ques_tenses.end()) continue;
                auto const person = u32string_view(w).substr(k + 2);
                bool ok = person.empty() ? tense->bare : false;
                for (auto const& tmpl : lex_.ques_persons) {
                    if (!ok && person == expand_person(tmpl, w[k + 1])) ok = true;
                }
                if (ok) return split_at(k);
            }
            break;
        }
        case rules::redup_sep: {
            if (w.size() < 6 || w.size() % 2 != 0) break;
            auto const half = w.size() / 2;
            auto const x = u32string_view(w).substr(0, half);
            if (x != u32string_view(w).substr(half) || !lex_.redup_words.count(x)) break;
            return split_at(half);
        }
        case rules::adv_vowel_restore: {
            auto const it = longest_prefix(lex_.adv_vowel_restore, w);
            if (it == lex_.adv_vowel_restore.end()) break;
            auto const n = it->first.size();
            return Match{1, carry_case(s.substr(0, n), it->second) + u32string(s.substr(n))};
        }
        default:
            break;
    }
    return std::nullopt;
}

std::vector<Detection> RuleTagger::detect(const std::vector<Token>& tokens) const {
    std::vector<Detection> candidates;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (int id : rule_ids()) {
            if (disabled_.count(id)) continue;
            if (auto m = match(id, tokens, i)) {
                auto const last = i + m->token_count - 1;
                candidates.push_back(Detection{tokens[i].start, tokens[last].end, id, i, i + m->token_count});
            }
        }
    }
    // Smallest rule id wins an overlap; then leftmost, then longest.
    std::sort(candidates.begin(), candidates.end(), [](const Detection& a, const Detection& b) {
        if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
        if (a.span_start != b.span_start) return a.span_start < b.span_start;
        return (a.span_end - a.span_start) > (b.span_end - b.span_start);
    });
    std::vector<Detection> accepted;
    for (auto const& c : candidates) {
        bool const clash = std::any_of(accepted.begin(), accepted.end(), [&](const Detection& a) {
            return c.span_start < a.span_end && a.span_start < c.span_end;
        });
        if (!clash) accepted.push_back(c);
    }
    std::sort(accepted.begin(), accepted.end(),
              [](const Detection& a, const Detection& b) { return a.span_start < b.span_start; });
    return accepted;
}

Correction RuleTagger::correct(const Detection& d, const std::vector<Token>& tokens) const {
    if (d.token_begin >= d.token_end || d.token_end > tokens.size())
        throw EngineError(d.rule_id, d.span_start, d.span_end, "token range out of bounds");
    auto const m = match(d.rule_id, tokens, d.token_begin);
    if (!m || m->token_count != d.token_end - d.token_begin || tokens[d.token_begin].start != d.span_start
        || tokens[d.token_end - 1].end != d.span_end)
        throw EngineError(d.rule_id, d.span_start, d.span_end, "rule does not apply to span");
    return Correction{d.span_start, d.span_end, utf8::encode(m->replacement), d.rule_id, Stage::grammar};
}

std::vector<Detection> detect(const std::vector<Token>& tokens, const LexiconSet& lexicons) {
    return RuleTagger(lexicons).detect(tokens);
}

Correction correct(const Detection& detection, const std::vector<Token>& tokens, const LexiconSet& lexicons) {
    return RuleTagger(lexicons).correct(detection, tokens);
}

std::vector<Correction> run_grammar_pass(std::string_view text, const Tagger& tagger,
                                         const Abbreviations& abbreviations, const RuleCatalog& catalog) {
    auto const decoded = utf8::decode(text);
    std::vector<Correction> out;
    for (auto const& sentence : split_sentences(u32string_view(decoded), abbreviations)) {
        for (auto const& d : tagger.detect(sentence.tokens)) {
            if (!catalog.contains(d.rule_id))
                throw EngineError(d.rule_id, d.span_start, d.span_end, "rule id missing from catalog");
            out.push_back(tagger.correct(d, sentence.tokens));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Correction& a, const Correction& b) { return a.span_start < b.span_start; });
    return out;
}

std::vector<Correction> run_grammar_pass(std::string_view text, const LexiconSet& lexicons,
                                         const RuleCatalog& catalog) {
    return run_grammar_pass(text, RuleTagger(lexicons), lexicons.abbreviations, catalog);
}

}  // namespace imla
