#include "imla/annotator.hpp"

#include "imla/errors.hpp"
#include "imla/utf8.hpp"

namespace imla {
namespace {

using nlohmann::json;

bool is_newline(char32_t c) { return c == U'\n' || c == U'\r'; }

void append_button(std::string& out, const Annotation& a) {
    out += "<button type=\"button\" class=\"gec-err gec-cat-";
    out += escape_markup(category_slug(a.category));
    out += "\" style=\"background-color: ";
    out += escape_markup(a.color);
    out += "\" data-rule=\"" + std::to_string(a.rule_id);
    out += "\" data-stage=\"";
    out += stage_name(a.stage);
    out += "\" data-title=\"" + escape_markup(a.title);
    out += "\" data-explanation=\"" + escape_markup(a.explanation);
    out += "\" data-original=\"" + escape_markup(a.original_text);
    out += "\">" + escape_markup(a.replacement) + "</button>";
}

template <typename T>
T required(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field: ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string("mistyped field: ") + key);
    }
}

}  // namespace

AnnotatedDocument merge_and_offset(std::string_view text, const std::vector<Correction>& corrections,
                                   const RuleCatalog& catalog) {
    auto const in = utf8::decode(text);
    AnnotatedDocument doc;
    doc.original = std::string(text);
    std::u32string out;
    out.reserve(in.size());
    std::size_t cursor = 0;
    for (std::size_t k = 0; k < corrections.size(); ++k) {
        auto const& c = corrections[k];
        if (c.span_start > c.span_end || c.span_end > in.size())
            throw ContractViolation("correction " + std::to_string(k) + " is out of bounds");
        if (c.span_start < cursor)
            throw ContractViolation("correction " + std::to_string(k) + " overlaps or is out of order");
        auto const original = in.substr(c.span_start, c.span_end - c.span_start);
        auto const replacement = utf8::decode(c.replacement);
        if (original == replacement)
            throw ContractViolation("correction " + std::to_string(k) + " does not change its span");
        out.append(in, cursor, c.span_start - cursor);
        auto const& spec = catalog.describe(c.rule_id);
        Annotation a;
        a.in_start = c.span_start;
        a.in_end = c.span_end;
        a.out_start = out.size();
        a.out_end = out.size() + replacement.size();
        a.original_text = utf8::encode(original);
        a.replacement = c.replacement;
        a.rule_id = c.rule_id;
        a.category = spec.category;
        a.color = spec.color;
        a.title = spec.mnemonic;
        a.explanation = spec.description_en;
        a.stage = c.stage;
        out.append(replacement);
        cursor = c.span_end;
        doc.annotations.push_back(std::move(a));
    }
    out.append(in, cursor, std::u32string::npos);
    doc.corrected = utf8::encode(out);
    return doc;
}

std::string to_plain(const AnnotatedDocument& doc) { return doc.corrected; }

std::string escape_markup(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string to_markup(const AnnotatedDocument& doc) {
    auto const text = utf8::decode(doc.corrected);
    std::string out;
    std::string paragraph;
    bool has_content = false;
    auto flush = [&] {
        if (has_content) out += "<p>" + paragraph + "</p>";
        paragraph.clear();
        has_content = false;
    };
    std::size_t next = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (next < doc.annotations.size() && doc.annotations[next].out_start == i
            && doc.annotations[next].out_end > i) {
            append_button(paragraph, doc.annotations[next]);
            has_content = true;
            i = doc.annotations[next].out_end;
            ++next;
            continue;
        }
        while (next < doc.annotations.size() && doc.annotations[next].out_end <= i) {
            // Deletions (empty replacements) have nothing to show.
            ++next;
        }
        if (is_newline(text[i])) {
            flush();
            while (i < text.size() && is_newline(text[i])) ++i;
            continue;
        }
        std::size_t j = i;
        std::size_t const stop = next < doc.annotations.size() ? doc.annotations[next].out_start : text.size();
        while (j < text.size() && j < stop && !is_newline(text[j])) ++j;
        if (j == i) ++j;
        paragraph += escape_markup(utf8::encode(std::u32string_view(text).substr(i, j - i)));
        has_content = true;
        i = j;
    }
    flush();
    return out;
}

json to_json(const AnnotatedDocument& doc) {
    json anns = json::array();
    for (auto const& a : doc.annotations) {
        anns.push_back({
            {"in_start", a.in_start},
            {"in_end", a.in_end},
            {"out_start", a.out_start},
            {"out_end", a.out_end},
            {"original_text", a.original_text},
            {"replacement", a.replacement},
            {"rule_id", a.rule_id},
            {"category", a.category},
            {"color", a.color},
            {"title", a.title},
            {"explanation", a.explanation},
            {"stage", stage_name(a.stage)},
        });
    }
    return json{
        {"original", doc.original},
        {"corrected", doc.corrected},
        {"annotations", std::move(anns)},
        {"engine_version", doc.engine_version},
        {"lexicon_version", doc.lexicon_version},
    };
}

AnnotatedDocument annotated_from_json(const json& j) {
    AnnotatedDocument doc;
    doc.original = required<std::string>(j, "original");
    doc.corrected = required<std::string>(j, "corrected");
    doc.engine_version = required<std::string>(j, "engine_version");
    doc.lexicon_version = required<std::string>(j, "lexicon_version");
    auto const anns = required<json>(j, "annotations");
    if (!anns.is_array()) throw ValidationError("annotations must be an array");
    for (auto const& aj : anns) {
        Annotation a;
        a.in_start = required<std::size_t>(aj, "in_start");
        a.in_end = required<std::size_t>(aj, "in_end");
        a.out_start = required<std::size_t>(aj, "out_start");
        a.out_end = required<std::size_t>(aj, "out_end");
        a.original_text = required<std::string>(aj, "original_text");
        a.replacement = required<std::string>(aj, "replacement");
        a.rule_id = required<int>(aj, "rule_id");
        a.category = required<std::string>(aj, "category");
        a.color = required<std::string>(aj, "color");
        a.title = required<std::string>(aj, "title");
        a.explanation = required<std::string>(aj, "explanation");
        a.stage = (aj.contains("stage") && aj["stage"] == "spell") ? Stage::spell : Stage::grammar;
        doc.annotations.push_back(std::move(a));
    }
    return doc;
}

std::string check_invariants(const AnnotatedDocument& doc) {
    auto rebuilt = utf8::decode(doc.original);
    auto const corrected = utf8::decode(doc.corrected);
    auto const original = rebuilt;
    for (auto it = doc.annotations.rbegin(); it != doc.annotations.rend(); ++it) {
        if (it->in_start > it->in_end || it->in_end > rebuilt.size()) return "input span out of range";
        if (utf8::encode(std::u32string_view(original).substr(it->in_start, it->in_end - it->in_start))
            != it->original_text)
            return "original_text does not match the input span";
        rebuilt.replace(it->in_start, it->in_end - it->in_start, utf8::decode(it->replacement));
    }
    if (rebuilt != corrected) return "replaying annotations does not reproduce the corrected text";
    for (auto const& a : doc.annotations) {
        auto const replacement = utf8::decode(a.replacement);
        if (a.out_end - a.out_start != replacement.size()) return "output span length differs from replacement";
        if (a.out_end > corrected.size()) return "output span out of range";
        if (corrected.substr(a.out_start, a.out_end - a.out_start) != replacement)
            return "output span does not hold the replacement";
    }
    return {};
}

}  // namespace imla
