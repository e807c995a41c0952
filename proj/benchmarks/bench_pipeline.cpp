// Throughput of the full pipeline and its two passes over synthetic documents.

#include <benchmark/benchmark.h>

#include "imla/eval_harness.hpp"
#include "imla/pipeline.hpp"
#include "imla/spell_engine.hpp"

namespace {

const imla::Pipeline& pipeline() {
    static const imla::Pipeline p = imla::Pipeline::load_default();
    return p;
}

const std::vector<std::string>& sentences() {
    static const auto s = imla::load_reference_inputs(imla::default_data_dir() / "reference_sentences.tsv");
    return s;
}

void BM_Pipeline(benchmark::State& state) {
    auto const doc = imla::build_corpus(sentences(), static_cast<std::size_t>(state.range(0)), 42);
    auto const& p = pipeline();
    for (auto _ : state) benchmark::DoNotOptimize(p.correct(doc));
    state.counters["words/s"] =
        benchmark::Counter(static_cast<double>(state.range(0)), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_Pipeline)->Arg(1000)->Arg(2000)->Arg(4000)->Arg(8000)->Arg(14000)->Unit(benchmark::kMillisecond);

void BM_GrammarPass(benchmark::State& state) {
    auto const doc = imla::build_corpus(sentences(), static_cast<std::size_t>(state.range(0)), 42);
    auto const& p = pipeline();
    for (auto _ : state) benchmark::DoNotOptimize(p.grammar_corrections(doc));
}
BENCHMARK(BM_GrammarPass)->Arg(1000)->Arg(14000)->Unit(benchmark::kMillisecond);

void BM_SpellCandidate(benchmark::State& state) {
    const std::u32string tokens[] = {U"yapmk", U"istiyrum", U"kitapp", U"gözlk", U"çalışmk"};
    auto const& lex = pipeline().spell_lexicon();
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(lex.best_correction(tokens[i++ % 5]));
}
BENCHMARK(BM_SpellCandidate)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
