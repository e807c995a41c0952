#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "imla/pipeline.hpp"

namespace imla {

inline constexpr std::string_view kUnchanged = "UNCHANGED";

enum OutcomeCase : int { true_positive = 1, true_negative = 2, false_positive = 3, false_negative = 4 };

struct Outcome {
    int case_no = 0;
    /// The system changed the text, but not into the ground truth; reported as case 4.
    bool wrong_change = false;
};

/// UNCHANGED markers must already be resolved to the input.
Outcome classify_outcome(std::string_view input, std::string_view system_output, std::string_view ground_truth);

struct ScenarioItem {
    std::string input;
    std::string expected_output;
    std::string ground_truth;
    int expected_case = 0;
};

/// TSV: input, expected_output-or-UNCHANGED, ground_truth-or-UNCHANGED, expected_case.
/// Markers are resolved to the input. Throws LexiconError on malformed rows.
std::vector<ScenarioItem> load_scenario(const std::filesystem::path& path);

struct ItemReport {
    ScenarioItem item;
    std::string actual_output;
    Outcome actual;
    bool output_match = false;
    bool case_match = false;
};

struct OutcomeReport {
    std::vector<ItemReport> items;
    int tp = 0;
    int tn = 0;
    int fp = 0;
    int fn = 0;

    std::vector<int> case_vector() const;
    bool all_match() const;
    nlohmann::json to_json() const;
};

/// Text in, corrected text out. Lets the harness drive the in-process pipeline or an HTTP endpoint.
using Runner = std::function<std::string(const std::string&)>;

Runner pipeline_runner(const Pipeline& pipeline);

OutcomeReport run_scenario(const Runner& runner, const std::vector<ScenarioItem>& items);
OutcomeReport run_scenario(const Pipeline& pipeline, const std::vector<ScenarioItem>& items);

/// First column of the reference sentence TSV.
std::vector<std::string> load_reference_inputs(const std::filesystem::path& path);

/// Exactly `words` whitespace-separated words drawn from `sentences` with a seeded generator.
std::string build_corpus(const std::vector<std::string>& sentences, std::size_t words, std::uint64_t seed);

std::size_t count_words(std::string_view text);

double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

struct TimingRow {
    std::size_t words = 0;
    /// Median over the repetitions.
    double millis = 0;
};

struct TimingReport {
    std::vector<TimingRow> rows;
    double pearson_r = 0;

    std::string csv() const;
    nlohmann::json to_json() const;
};

/// Sizes must be positive and ascending (throws ValidationError otherwise).
TimingReport run_timing(const Runner& runner, const std::vector<std::size_t>& sizes,
                        const std::vector<std::string>& sentences, std::uint64_t seed, int repetitions = 3);

}  // namespace imla
