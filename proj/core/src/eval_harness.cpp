#include "imla/eval_harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "imla/errors.hpp"

namespace imla {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::vector<std::string_view> split_words(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t j = i;
        while (j < text.size() && !is_space(text[j])) ++j;
        if (j > i) out.push_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

Outcome classify_outcome(std::string_view input, std::string_view output, std::string_view truth) {
    if (truth == input) return {output == input ? true_negative : false_positive, false};
    if (output == truth) return {true_positive, false};
    return {false_negative, output != input};
}

std::vector<ScenarioItem> load_scenario(const std::filesystem::path& path) {
    std::vector<ScenarioItem> items;
    for (auto const& row : read_tsv(path, 4)) {
        ScenarioItem it;
        it.input = row[0];
        it.expected_output = row[1] == kUnchanged ? row[0] : row[1];
        it.ground_truth = row[2] == kUnchanged ? row[0] : row[2];
        auto [end, ec] = std::from_chars(row[3].data(), row[3].data() + row[3].size(), it.expected_case);
        if (ec != std::errc{} || it.expected_case < 1 || it.expected_case > 4)
            throw LexiconError(path.string() + ": expected_case must be 1-4, got " + row[3]);
        items.push_back(std::move(it));
    }
    return items;
}

std::vector<int> OutcomeReport::case_vector() const {
    std::vector<int> out;
    for (auto const& r : items) out.push_back(r.actual.case_no);
    return out;
}

bool OutcomeReport::all_match() const {
    return std::all_of(items.begin(), items.end(),
                       [](const ItemReport& r) { return r.output_match && r.case_match; });
}

nlohmann::json OutcomeReport::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (auto const& r : items) {
        rows.push_back({
            {"input", r.item.input},
            {"expected_output", r.item.expected_output},
            {"ground_truth", r.item.ground_truth},
            {"actual_output", r.actual_output},
            {"expected_case", r.item.expected_case},
            {"actual_case", r.actual.case_no},
            {"wrong_change", r.actual.wrong_change},
            {"match", r.output_match && r.case_match},
        });
    }
    return {
        {"items", rows},
        {"counts", {{"tp", tp}, {"tn", tn}, {"fp", fp}, {"fn", fn}}},
        {"case_vector", case_vector()},
        {"all_match", all_match()},
    };
}

Runner pipeline_runner(const Pipeline& pipeline) {
    return [pipeline](const std::string& text) { return pipeline.correct(text).corrected; };
}

OutcomeReport run_scenario(const Runner& runner, const std::vector<ScenarioItem>& items) {
    OutcomeReport report;
    for (auto const& item : items) {
        ItemReport r;
        r.item = item;
        r.actual_output = runner(item.input);
        r.actual = classify_outcome(item.input, r.actual_output, item.ground_truth);
        r.output_match = r.actual_output == item.expected_output;
        r.case_match = r.actual.case_no == item.expected_case;
        switch (r.actual.case_no) {
            case true_positive: ++report.tp; break;
            case true_negative: ++report.tn; break;
            case false_positive: ++report.fp; break;
            default: ++report.fn; break;
        }
        report.items.push_back(std::move(r));
    }
    return report;
}

OutcomeReport run_scenario(const Pipeline& pipeline, const std::vector<ScenarioItem>& items) {
    return run_scenario(pipeline_runner(pipeline), items);
}

std::vector<std::string> load_reference_inputs(const std::filesystem::path& path) {
    std::vector<std::string> out;
    for (auto const& row : read_tsv(path, 2)) out.push_back(row[0]);
    return out;
}

std::size_t count_words(std::string_view text) { return split_words(text).size(); }

std::string build_corpus(const std::vector<std::string>& sentences, std::size_t words, std::uint64_t seed) {
    if (sentences.empty()) throw ValidationError("corpus needs at least one sentence");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, sentences.size() - 1);
    std::string out;
    std::size_t have = 0;
    while (have < words) {
        for (auto w : split_words(sentences[pick(rng)])) {
            if (have == words) break;
            if (have > 0) out.push_back(' ');
            out += w;
            ++have;
        }
    }
    return out;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    auto const n = std::min(xs.size(), ys.size());
    if (n < 2) return 0;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0 || syy == 0) return 0;
    return sxy / std::sqrt(sxx * syy);
}

std::string TimingReport::csv() const {
    std::ostringstream out;
    out << "words,millis\n";
    for (auto const& r : rows) out << r.words << ',' << r.millis << '\n';
    return out.str();
}

nlohmann::json TimingReport::to_json() const {
    nlohmann::json rs = nlohmann::json::array();
    for (auto const& r : rows) rs.push_back({{"words", r.words}, {"millis", r.millis}});
    return {{"rows", rs}, {"pearson_r", pearson_r}};
}

TimingReport run_timing(const Runner& runner, const std::vector<std::size_t>& sizes,
                        const std::vector<std::string>& sentences, std::uint64_t seed, int repetitions) {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] == 0 || (i > 0 && sizes[i] <= sizes[i - 1]))
            throw ValidationError("timing sizes must be positive and ascending");
    }
    repetitions = std::max(1, repetitions);
    TimingReport report;
    std::vector<double> xs, ys;
    for (auto const size : sizes) {
        auto const corpus = build_corpus(sentences, size, seed);
        std::vector<double> samples;
        for (int r = 0; r < repetitions; ++r) {
            auto const t0 = std::chrono::steady_clock::now();
            runner(corpus);
            auto const t1 = std::chrono::steady_clock::now();
            samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
        std::sort(samples.begin(), samples.end());
        double const median = samples[samples.size() / 2];
        report.rows.push_back({size, median});
        xs.push_back(static_cast<double>(size));
        ys.push_back(median);
    }
    report.pearson_r = pearson(xs, ys);
    return report;
}

}  // namespace imla
