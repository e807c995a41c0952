#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <unistd.h>

#include "imla/morphophonology.hpp"
#include "imla/utf8.hpp"

namespace imla::fixture {
namespace {

using utf8::encode;

std::string cap(const std::u32string& w) { return encode(phon::capitalize(w)); }

// Completions that turn a light-verb prefix from light_verb_forms.tsv into a real word form.
const std::map<std::u32string, std::u32string>& form_completions() {
    static const std::map<std::u32string, std::u32string> m{
        {U"et", U"et"},         {U"etm", U"etmek"},   {U"ett", U"etti"},    {U"ets", U"etse"},
        {U"edi", U"ediyor"},    {U"ede", U"edecek"},  {U"edil", U"edildi"}, {U"edip", U"edip"},
        {U"edin", U"edince"},   {U"eyle", U"eyledi"}, {U"olm", U"olmak"},   {U"oldu", U"oldu"},
        {U"olur", U"olur"},     {U"oluy", U"oluyor"}, {U"olac", U"olacak"}, {U"olun", U"olunca"},
        {U"olsa", U"olsa"},     {U"olsu", U"olsun"},
    };
    return m;
}

// A verb form ending in each question-clitic tense.
const std::map<std::u32string, std::u32string>& tense_hosts() {
    static const std::map<std::u32string, std::u32string> m{
        {U"yor", U"geliyor"}, {U"mış", U"almış"},  {U"miş", U"gelmiş"}, {U"muş", U"olmuş"},
        {U"müş", U"görmüş"},  {U"acak", U"alacak"}, {U"ecek", U"gelecek"}, {U"ar", U"yapar"},
        {U"er", U"gider"},    {U"ır", U"kalır"},   {U"ir", U"gelir"},   {U"ur", U"durur"},
        {U"ür", U"görür"},
    };
    return m;
}

std::u32string expand_person(std::u32string tmpl, char32_t vowel) {
    std::replace(tmpl.begin(), tmpl.end(), U'H', vowel);
    return tmpl;
}

char32_t pick(std::mt19937_64& rng, std::u32string_view alphabet) {
    return alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
}

}  // namespace

std::filesystem::path data_dir() { return default_data_dir(); }

const Pipeline& shared_pipeline() {
    static const Pipeline p = Pipeline::load_default();
    return p;
}

std::filesystem::path scratch_dir(const std::string& tag) {
    static std::atomic<int> counter{0};
    auto dir = std::filesystem::temp_directory_path() /
               ("imla-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::vector<RoundTripCase> round_trip_cases(const LexiconSet& lex) {
    std::vector<RoundTripCase> out;
    auto add = [&](int rule, const std::u32string& entry, const std::string& in, const std::string& exp) {
        out.push_back({rule, encode(entry), in, exp});
    };
    auto missing = [&](int rule, const std::u32string& entry) { out.push_back({rule, encode(entry), "", ""}); };

    for (auto const& host : lex.conj_de_hosts) {
        auto const de = encode(phon::harmonize_de(host));
        add(rules::conj_de_sep, host, "Bunu " + encode(host) + de + " duydu.", "Bunu " + encode(host) + " " + de + " duydu.");
        add(rules::conj_de_sep, host, cap(host) + de + " geldi.", cap(host) + " " + de + " geldi.");
    }
    for (auto const& host : lex.conj_ki_hosts) {
        add(rules::conj_ki_sep, host, "Ama " + encode(host) + "ki gelmedi.", "Ama " + encode(host) + " ki gelmedi.");
    }
    for (auto const& [bad, good] : lex.foreign_r1) {
        add(rules::foreign_r1, bad, "Dün " + encode(bad) + " aldık.", "Dün " + encode(good) + " aldık.");
        add(rules::foreign_r1, bad, "Dün " + encode(bad) + "lar geldi.", "Dün " + encode(good) + "lar geldi.");
        add(rules::foreign_r1, bad, cap(bad) + " geldi.", cap(good) + " geldi.");
    }
    for (auto const& h : lex.haplology_stems) {
        std::u32string reduced = h.stem;
        if (h.haplology) reduced = phon::drop_haplology_vowel(reduced);
        if (h.voicing) reduced = phon::voice_final_consonant(reduced);
        if (h.canonical_sample.rfind(reduced, 0) != 0) {
            missing(rules::bisyll_hapl_vow, h.stem);
            continue;
        }
        auto const suffix = h.canonical_sample.substr(reduced.size());
        add(rules::bisyll_hapl_vow, h.stem, "Onun " + encode(h.stem + suffix) + " büyük.",
            "Onun " + encode(h.canonical_sample) + " büyük.");
    }
    for (auto const& noun : lex.light_verb_sep) {
        for (auto const& f : lex.light_verb_forms) {
            auto const it = form_completions().find(f.prefix);
            if (it == form_completions().end()) {
                missing(rules::light_verb_sep, noun + U"+" + f.prefix);
                continue;
            }
            add(rules::light_verb_sep, noun + U"+" + f.prefix, "Bunu " + encode(noun + it->second) + " sandı.",
                "Bunu " + encode(noun + U" " + it->second) + " sandı.");
        }
    }
    for (auto const& [noun, fused] : lex.light_verb_adj) {
        for (auto const& f : lex.light_verb_forms) {
            if (f.verb != U"et") continue;
            auto const it = form_completions().find(f.prefix);
            if (it == form_completions().end()) {
                missing(rules::light_verb_adj, noun + U"+" + f.prefix);
                continue;
            }
            add(rules::light_verb_adj, noun + U"+" + f.prefix, "Bunu " + encode(noun + U" " + it->second) + " sandı.",
                "Bunu " + encode(fused + it->second) + " sandı.");
        }
    }
    for (auto const& cv : lex.comp_verb_converbs) {
        for (auto const& [aux, tails] : lex.comp_verb_aux) {
            for (auto const& tail : tails) {
                add(rules::comp_verb_adj, cv + U" " + aux + tail, "Sonra " + encode(cv + U" " + aux + tail) + " yine.",
                    "Sonra " + encode(cv + aux + tail) + " yine.");
            }
        }
    }
    for (auto const& [spaced, joined] : lex.pronoun_exc) {
        add(rules::pronoun_exc, spaced, "Sonra " + encode(spaced) + " geldi.", "Sonra " + encode(joined) + " geldi.");
        add(rules::pronoun_exc, spaced, cap(spaced) + " geldi.", cap(joined) + " geldi.");
    }
    for (auto const& t : lex.ques_tenses) {
        auto const it = tense_hosts().find(t.value);
        if (it == tense_hosts().end()) {
            missing(rules::ques_clitic_sep, t.value);
            continue;
        }
        auto const& verb = it->second;
        char32_t const v = phon::four_way(*phon::last_vowel(verb));
        std::u32string const particle = std::u32string(U"m") + v;
        std::vector<std::u32string> persons;
        if (t.bare) persons.push_back(U"");
        for (auto const& p : lex.ques_persons) persons.push_back(expand_person(p, v));
        for (auto const& person : persons) {
            add(rules::ques_clitic_sep, verb + U"+" + person, "Yarın " + encode(verb + particle + person) + "?",
                "Yarın " + encode(verb + U" " + particle + person) + "?");
        }
    }
    for (auto const& w : lex.redup_words) {
        add(rules::redup_sep, w, "O " + encode(w + w) + " yürüdü.", "O " + encode(w + U" " + w) + " yürüdü.");
    }
    for (auto const& [elided, restored] : lex.adv_vowel_restore) {
        add(rules::adv_vowel_restore, elided, "Sonra " + encode(elided) + " bekledi.",
            "Sonra " + encode(restored) + " bekledi.");
        add(rules::adv_vowel_restore, elided, cap(elided) + " bekledi.", cap(restored) + " bekledi.");
    }
    return out;
}

std::string random_text(std::mt19937_64& rng, std::size_t max_len) {
    static const std::u32string alphabet =
        U"abcçdefgğhıijklmnoöprsştuüvyzABCÇDEFGĞHIİJKLMNOÖPRSŞTUÜVYZ0123456789     ..,;!?'’-<>&\"\n\n\r";
    std::size_t const len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    std::u32string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(pick(rng, alphabet));
    return encode(s);
}

std::vector<Correction> random_corrections(std::mt19937_64& rng, const std::string& text,
                                           const std::vector<int>& rule_ids) {
    static const std::u32string repl_alphabet = U"abcçğıöşüİI <>&\"'x";
    auto const u = utf8::decode(text);
    std::vector<Correction> out;
    std::size_t pos = 0;
    std::uniform_int_distribution<int> coin(0, 3);
    while (pos < u.size()) {
        std::size_t const skip = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
        pos += skip;
        if (pos >= u.size() && !(pos == u.size() && coin(rng) == 0)) break;
        pos = std::min(pos, u.size());
        std::size_t const len = std::min<std::size_t>(std::uniform_int_distribution<std::size_t>(0, 5)(rng), u.size() - pos);
        std::u32string const original = u.substr(pos, len);
        std::u32string repl;
        std::size_t const rlen = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
        for (std::size_t i = 0; i < rlen; ++i) repl.push_back(pick(rng, repl_alphabet));
        if (repl == original) repl.push_back(U'z');
        Correction c;
        c.span_start = pos;
        c.span_end = pos + len;
        c.replacement = encode(repl);
        c.rule_id = rule_ids[std::uniform_int_distribution<std::size_t>(0, rule_ids.size() - 1)(rng)];
        c.stage = c.rule_id == rules::spell ? Stage::spell : Stage::grammar;
        out.push_back(std::move(c));
        // Adjacent spans are allowed, but an insertion right after another at the same point is not.
        pos += std::max<std::size_t>(len, 1);
    }
    return out;
}

std::string strip_markup(const std::string& markup) {
    std::string text;
    std::size_t i = 0;
    while (i < markup.size()) {
        if (markup[i] == '<') {
            auto const close = markup.find('>', i);
            if (markup.compare(i, 4, "</p>") == 0) text += '\n';
            i = close == std::string::npos ? markup.size() : close + 1;
        } else {
            text += markup[i++];
        }
    }
    static const std::pair<const char*, char> entities[] = {
        {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&#39;", '\''}, {"&amp;", '&'}};
    std::string out;
    for (std::size_t k = 0; k < text.size();) {
        bool hit = false;
        if (text[k] == '&') {
            for (auto const& [name, ch] : entities) {
                std::string_view n(name);
                if (text.compare(k, n.size(), n) == 0) {
                    out += ch;
                    k += n.size();
                    hit = true;
                    break;
                }
            }
        }
        if (!hit) out += text[k++];
    }
    while (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

std::string collapse_paragraphs(const std::string& plain) {
    std::string out;
    bool pending = false;
    for (char c : plain) {
        if (c == '\n' || c == '\r') {
            pending = true;
            continue;
        }
        if (pending && !out.empty()) out += '\n';
        pending = false;
        out += c;
    }
    return out;
}

std::size_t unweighted_osa(std::u32string_view a, std::u32string_view b) {
    std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
            if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
                d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
        }
    }
    return d[a.size()][b.size()];
}

}  // namespace imla::fixture
