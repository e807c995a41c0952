#include "imla/lexicon.hpp"

#include <algorithm>
#include <fstream>

#include "imla/errors.hpp"
#include "imla/morphophonology.hpp"
#include "imla/utf8.hpp"

namespace imla {
namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \r");
    return s.substr(b, e - b + 1);
}

std::u32string lowered(const std::string& s) { return phon::lower(utf8::decode(s)); }

WordSet word_set(const std::filesystem::path& path) {
    WordSet out;
    for (auto const& row : read_tsv(path, 1)) out.insert(lowered(row[0]));
    return out;
}

WordMap word_map(const std::filesystem::path& path) {
    WordMap out;
    for (auto const& row : read_tsv(path, 2)) {
        auto [it, fresh] = out.emplace(lowered(row[0]), lowered(row[1]));
        if (!fresh) throw LexiconError(path.string() + ": duplicate entry " + row[0]);
    }
    return out;
}

std::vector<std::u32string> split_commas(const std::string& s) {
    std::vector<std::u32string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        auto item = trim(s.substr(pos, comma - pos));
        if (!item.empty()) out.push_back(lowered(item));
        pos = comma + 1;
    }
    return out;
}

}  // namespace

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LexiconError(path.string() + ": cannot open");
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back(line);
    }
    return out;
}

std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path& path, std::size_t columns) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LexiconError(path.string() + ": cannot open");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        if (!utf8::is_valid(line))
            throw LexiconError(path.string() + ":" + std::to_string(line_no) + ": invalid UTF-8");
        std::vector<std::string> row;
        std::size_t pos = 0;
        while (true) {
            auto tab = line.find('\t', pos);
            row.push_back(trim(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos)));
            if (tab == std::string::npos) break;
            pos = tab + 1;
        }
        if (row.size() != columns)
            throw LexiconError(path.string() + ":" + std::to_string(line_no) + ": expected "
                               + std::to_string(columns) + " columns, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

LexiconSet LexiconSet::load(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw LexiconError(dir.string() + ": lexicon directory not found");
    LexiconSet lex;
    auto const version_lines = read_lines(dir / "version");
    if (version_lines.empty()) throw LexiconError((dir / "version").string() + ": empty version file");
    lex.version = trim(version_lines.front());

    lex.conj_de_hosts = word_set(dir / "conj_de_hosts.tsv");
    lex.conj_de_exceptions = word_set(dir / "conj_de_exceptions.tsv");
    lex.conj_de_locative_hosts = word_set(dir / "conj_de_locative_hosts.tsv");
    lex.conj_ki_exceptions = word_set(dir / "conj_ki_exceptions.tsv");
    lex.conj_ki_hosts = word_set(dir / "conj_ki_hosts.tsv");
    lex.foreign_r1 = word_map(dir / "foreign_r1.tsv");
    lex.light_verb_sep = word_set(dir / "light_verb_sep.tsv");
    lex.light_verb_adj = word_map(dir / "light_verb_adj.tsv");
    lex.comp_verb_converbs = word_set(dir / "comp_verb_converbs.tsv");
    lex.pronoun_exc = word_map(dir / "pronoun_exc.tsv");
    lex.redup_words = word_set(dir / "redup_words.tsv");
    lex.adv_vowel_restore = word_map(dir / "adv_vowel_restore.tsv");

    auto const hapl_path = dir / "haplology_stems.tsv";
    for (auto const& row : read_tsv(hapl_path, 3)) {
        HaplologyStem h;
        h.stem = lowered(row[0]);
        h.canonical_sample = lowered(row[2]);
        auto flags = row[1];
        std::replace(flags.begin(), flags.end(), '+', ',');
        for (auto const& flag : split_commas(flags)) {
            if (flag == U"hapl") {
                h.haplology = true;
            } else if (flag == U"voice") {
                h.voicing = true;
            } else {
                throw LexiconError(hapl_path.string() + ": unknown flag " + utf8::encode(flag));
            }
        }
        if (!h.haplology && !h.voicing) throw LexiconError(hapl_path.string() + ": no flags for " + row[0]);
        lex.haplology_stems.push_back(std::move(h));
    }

    for (auto const& row : read_tsv(dir / "light_verb_forms.tsv", 2)) {
        LightVerbForm f;
        f.verb = lowered(row[0]);
        f.exact = !row[1].empty() && row[1][0] == '=';
        f.prefix = lowered(f.exact ? row[1].substr(1) : row[1]);
        lex.light_verb_forms.push_back(std::move(f));
    }

    for (auto const& row : read_tsv(dir / "comp_verb_aux.tsv", 2)) {
        lex.comp_verb_aux[lowered(row[0])] = split_commas(row[1]);
    }

    auto const ques_path = dir / "ques_clitic.tsv";
    for (auto const& row : read_tsv(ques_path, 3)) {
        if (row[0] == "tense") {
            lex.ques_tenses.push_back({lowered(row[1]), row[2] == "yes"});
        } else if (row[0] == "person") {
            // Templates keep their uppercase H placeholder.
            lex.ques_persons.push_back(utf8::decode(row[1]));
        } else {
            throw LexiconError(ques_path.string() + ": unknown kind " + row[0]);
        }
    }

    lex.abbreviations = Abbreviations::load(dir / "abbreviations.txt");
    return lex;
}

}  // namespace imla
