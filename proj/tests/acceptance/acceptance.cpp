// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   imla_acceptance                  run everything
//   imla_acceptance --child-save P   (internal) write records to store P and print them

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <iostream>
#include <latch>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>
#include <thread>

#include "httplib.h"

#include "imla/eval_harness.hpp"
#include "imla/service.hpp"
#include "imla/spell_engine.hpp"
#include "imla/utf8.hpp"
#include "support.hpp"

using namespace imla;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Verdict {
    bool pass = false;
    std::string detail;
};

const Pipeline& pipeline() { return fixture::shared_pipeline(); }

bool has_rule(const AnnotatedDocument& doc, int rule, const std::string& replacement) {
    for (auto const& a : doc.annotations)
        if (a.rule_id == rule && a.replacement == replacement) return true;
    return false;
}

Verdict rule_examples() {
    struct Row {
        int rule;
        const char* input;
        const char* output;
        const char* after;
    };
    const Row rows[] = {
        {1, "Durumu oğlunada bildirdi.", "Durumu oğluna da bildirdi.", "oğluna da"},
        {7, "Bugün öyle çok yorulmuşki hemen yattı.", "Bugün öyle çok yorulmuş ki hemen yattı.", "yorulmuş ki"},
        {9, "O gıram altın aldı.", "O gram altın aldı.", "gram"},
        {13, "Onun ağızı çok kuruydu.", "Onun ağzı çok kuruydu.", "ağzı"},
        {17, "Bu görüşü kurula arzetmek istiyorum.", "Bu görüşü kurula arz etmek istiyorum.", "arz etmek"},
        {20, "Akşama kadar sokakta gide durmak zorunda kaldı.", "Akşama kadar sokakta gidedurmak zorunda kaldı.",
         "gidedurmak"},
        {22, "Bu konuda hiç bir şey söylemedi.", "Bu konuda hiçbir şey söylemedi.", "hiçbir"},
    };
    auto const t0 = Clock::now();
    int ok = 0;
    std::string failed;
    for (auto const& r : rows) {
        auto const doc = pipeline().correct(r.input);
        if (doc.corrected == r.output && doc.annotations.size() == 1 && has_rule(doc, r.rule, r.after))
            ++ok;
        else
            failed += " rule " + std::to_string(r.rule) + " got '" + doc.corrected + "'";
    }
    double const ms = ms_since(t0);
    std::ostringstream d;
    d << ok << "/7 pairs, " << ms << " ms" << failed;
    return {ok == 7 && ms < 1000, d.str()};
}

Verdict scenario_outputs() {
    auto const items = load_scenario(fixture::data_dir() / "scenario.tsv");
    auto const t0 = Clock::now();
    auto const report = run_scenario(pipeline(), items);
    double const ms = ms_since(t0);
    std::vector<int> const want{4, 1, 1, 1, 3, 1, 1, 1, 2, 1};
    int outputs = 0;
    for (auto const& r : report.items) outputs += r.output_match;
    std::ostringstream d;
    d << outputs << "/10 outputs, cases";
    for (int c : report.case_vector()) d << ' ' << c;
    d << " (TP " << report.tp << " TN " << report.tn << " FP " << report.fp << " FN " << report.fn << "), " << ms
      << " ms";
    return {items.size() == 10 && outputs == 10 && report.case_vector() == want && ms < 5000, d.str()};
}

Verdict spelling() {
    struct Row {
        const char* input;
        const char* output;
    };
    const Row rows[] = {
        {"Bu projeyi yapmk istiyormusun?", "Bu projeyi yapmak istiyor musun?"},
        {"Tatil yapmak istiyrum fakat çalışmaya devam etmem şart.",
         "Tatil yapmak istiyorum fakat çalışmaya devam etmem şart."},
        {"Yarın ankara'ya gideceğim.", "Yarın Ankara'ya gideceğim."},
        {"ankara", "Ankara"},
    };
    int ok = 0;
    std::string failed;
    for (auto const& r : rows) {
        auto const doc = pipeline().correct(r.input);
        bool const spell_tagged = std::any_of(doc.annotations.begin(), doc.annotations.end(),
                                              [](const Annotation& a) { return a.rule_id == rules::spell; });
        if (doc.corrected == r.output && spell_tagged)
            ++ok;
        else
            failed += " '" + doc.corrected + "'";
    }

    auto const words = read_lines(fixture::data_dir() / "lexicons" / "wordlist.txt");
    std::mt19937_64 rng(10000);
    std::vector<std::string> sample;
    std::sample(words.begin(), words.end(), std::back_inserter(sample), 10000, rng);
    std::string text;
    for (std::size_t i = 0; i < sample.size(); ++i) text += sample[i] + (i % 15 == 14 ? ".\n" : " ");
    auto const tokens = tokenize_document(utf8::decode(text), pipeline().lexicons().abbreviations);
    auto const altered = normalize_typos(tokens, pipeline().spell_lexicon());

    std::ostringstream d;
    d << ok << "/4 corrections, " << altered.size() << " alterations over " << sample.size()
      << " in-lexicon words" << failed;
    return {ok == 4 && altered.empty() && sample.size() == 10000, d.str()};
}

Verdict offsets() {
    std::vector<int> ids;
    for (auto const& r : pipeline().catalog().rules()) ids.push_back(r.rule_id);
    std::mt19937_64 rng(1000);
    int const docs = 2000;
    int ok = 0;
    std::size_t annotations = 0;
    for (int i = 0; i < docs; ++i) {
        auto const text = fixture::random_text(rng, 120);
        auto const cs = fixture::random_corrections(rng, text, ids);
        auto const doc = merge_and_offset(text, cs, pipeline().catalog());
        bool good = check_invariants(doc).empty() && doc.annotations.size() == cs.size();
        for (auto const& a : doc.annotations) {
            good = good && utf8::slice(doc.original, a.in_start, a.in_end) == a.original_text &&
                   utf8::slice(doc.corrected, a.out_start, a.out_end) == a.replacement;
        }
        good = good && fixture::strip_markup(to_markup(doc)) == fixture::collapse_paragraphs(to_plain(doc));
        ok += good;
        annotations += cs.size();
    }
    std::ostringstream d;
    d << ok << "/" << docs << " random documents (" << annotations << " annotations)";
    return {ok == docs, d.str()};
}

Verdict round_trip() {
    auto const cases = fixture::round_trip_cases(pipeline().lexicons());
    std::size_t ok = 0;
    std::set<int> rules_seen;
    std::string failed;
    for (auto const& c : cases) {
        rules_seen.insert(c.rule_id);
        if (c.input.empty()) {
            failed += " [unrealized " + std::to_string(c.rule_id) + ":" + c.entry + "]";
            continue;
        }
        auto const doc = pipeline().correct(c.input);
        bool const tagged = std::any_of(doc.annotations.begin(), doc.annotations.end(),
                                        [&](const Annotation& a) { return a.rule_id == c.rule_id; });
        if (doc.corrected == c.expected && tagged)
            ++ok;
        else if (failed.size() < 400)
            failed += " [" + c.input + " -> " + doc.corrected + "]";
    }
    std::ostringstream d;
    d << ok << "/" << cases.size() << " entries over " << rules_seen.size() << " rules" << failed;
    return {ok == cases.size() && rules_seen.size() == RuleTagger::rule_ids().size(), d.str()};
}

Verdict timing() {
    auto const sentences = load_reference_inputs(fixture::data_dir() / "reference_sentences.tsv");
    auto const report =
        run_timing(pipeline_runner(pipeline()), {1000, 2000, 4000, 8000, 14000}, sentences, 42, 5);
    std::ostringstream d;
    for (auto const& r : report.rows) d << r.words << "w=" << r.millis << "ms ";
    d << "r=" << report.pearson_r;
    double const largest = report.rows.back().millis;
    return {largest < 90000 && report.pearson_r >= 0.95, d.str()};
}

Verdict concurrency() {
    auto const store = std::make_shared<Store>(fixture::scratch_dir("accept-conc") / "log");
    Service svc(pipeline(), store);
    HttpServer server(svc);
    if (!server.bind("127.0.0.1", 0)) return {false, "cannot bind loopback port"};
    std::thread runner([&] { server.run(); });

    auto const items = load_scenario(fixture::data_dir() / "scenario.tsv");
    std::vector<std::string> texts;
    for (auto const& it : items) texts.push_back(it.input);
    std::vector<json> single;
    for (auto const& t : texts) {
        auto const doc = pipeline().correct(t);
        json j = to_json(doc);
        single.push_back({{"corrected", j["corrected"]}, {"annotations", j["annotations"]}});
    }
    auto const before = store->session_count();

    std::latch start(static_cast<std::ptrdiff_t>(texts.size()));
    std::vector<std::future<json>> futures;
    for (auto const& t : texts) {
        futures.push_back(std::async(std::launch::async, [&, t] {
            httplib::Client c("127.0.0.1", server.port());
            c.set_read_timeout(60);
            start.arrive_and_wait();
            auto r = c.Post("/api/correct", json{{"text", t}}.dump(), "application/json");
            return r && r->status == 200 ? json::parse(r->body) : json();
        }));
    }
    int same = 0;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        auto const j = futures[i].get();
        if (j.is_null()) continue;
        same += j["corrected"] == single[i]["corrected"] && j["annotations"] == single[i]["annotations"];
        if (j["session_id"].is_string()) ids.insert(j["session_id"].get<std::string>());
    }
    server.stop();
    runner.join();

    auto const added = store->session_count() - before;
    std::set<std::string> stored;
    for (auto const& s : store->list_sessions()) stored.insert(s.session_id);
    bool const all_stored = std::all_of(ids.begin(), ids.end(), [&](auto const& id) { return stored.count(id); });
    std::ostringstream d;
    d << same << "/" << texts.size() << " identical, " << added << " new sessions, " << ids.size() << " unique ids";
    return {same == 10 && texts.size() == 10 && added == 10 && ids.size() == 10 && all_stored, d.str()};
}

json dump_store(const Store& s) {
    json sessions = json::array();
    for (auto const& x : s.list_sessions()) sessions.push_back(to_json(x));
    json feedback = json::array();
    for (auto const& f : s.list_feedback()) feedback.push_back(to_json(f));
    return {{"sessions", sessions}, {"feedback", feedback}};
}

int child_save(const std::string& path) {
    Store s(path);
    auto const a = pipeline().correct("Bu projeyi yapmk istiyormusun?");
    auto const b = pipeline().correct("Bir takım ansiklopediye dünyanın parasını ödedim.");
    s.save_session(a, to_markup(a), Source::web);
    auto const id = s.save_session(b, to_markup(b), Source::api);
    s.attach_correction_feedback(id, "Bir takım ansiklopediye dünyanın parasını ödedim.");
    s.save_general_feedback("Harika araç!");
    std::cout << dump_store(s).dump();
    return 0;
}

Verdict persistence(const std::string& self) {
    auto const path = fixture::scratch_dir("accept-persist") / "log";
    std::string const cmd = self + " --child-save " + path.string();
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {false, "cannot start child process"};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int const status = pclose(p);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, "child process failed"};

    Store reopened(path);
    auto const now = dump_store(reopened).dump();
    auto const j = json::parse(out);
    bool const feedback_ok = j["sessions"].size() == 2 && !j["sessions"][1]["correction_feedback"].is_null() &&
                             j["feedback"].size() == 1 && j["feedback"][0]["message"] == "Harika araç!";
    bool const identical = now == out;
    std::ostringstream d;
    d << reopened.session_count() << " sessions, " << reopened.list_feedback().size() << " general feedback, "
      << (identical ? "byte-identical" : "DIFFERENT") << " after restart";
    return {identical && feedback_ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc == 3 && std::string(argv[1]) == "--child-save") return child_save(argv[2]);

    std::string const self = std::filesystem::read_symlink("/proc/self/exe").string();
    const std::pair<const char*, std::function<Verdict()>> checks[] = {
        {"rule examples", rule_examples},
        {"scenario outputs and cases", scenario_outputs},
        {"spelling correction", spelling},
        {"annotation offset properties", offsets},
        {"lexicon reverse-transformation round trip", round_trip},
        {"timing and linearity", timing},
        {"ten concurrent requests", concurrency},
        {"persistence across restart", [&] { return persistence(self); }},
    };
    (void)pipeline();
    int failures = 0;
    int index = 1;
    for (auto const& [name, check] : checks) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.pass;
        std::cout << (v.pass ? "PASS" : "FAIL") << "  [" << index++ << "] " << name << ": " << v.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
