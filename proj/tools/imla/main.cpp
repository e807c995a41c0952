// imla: one-shot correction, the HTTP service, and the evaluation harness.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 engine error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <iterator>
#include <pthread.h>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "httplib.h"

#include "imla/errors.hpp"
#include "imla/eval_harness.hpp"
#include "imla/pipeline.hpp"
#include "imla/service.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kIo = 2;
constexpr int kEngine = 3;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string catalog;
    std::string lexicons;
    std::vector<int> disabled;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--catalog", c.catalog, "Rule catalog TSV (default: bundled)");
    cmd->add_option("--lexicons", c.lexicons, "Lexicon directory (default: bundled)");
    cmd->add_option("--disable-rule", c.disabled, "Rule id to switch off (repeatable)");
}

imla::Pipeline load_pipeline(const Common& c) {
    auto const catalog = c.catalog.empty() ? imla::default_catalog_path() : std::filesystem::path(c.catalog);
    auto const lexicons = c.lexicons.empty() ? imla::default_lexicon_dir() : std::filesystem::path(c.lexicons);
    return imla::Pipeline::load(catalog, lexicons, {c.disabled.begin(), c.disabled.end()});
}

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::size_t> parse_sizes(const std::string& spec) {
    std::vector<std::size_t> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoul(item));
    }
    return out;
}

// Blocks SIGINT/SIGTERM for every thread and stops the server from a dedicated waiter.
int serve(imla::Service& service, const std::string& host, int port) {
    imla::HttpServer server(service);
    if (!server.bind(host, port)) {
        std::cerr << "imla: cannot listen on " << host << ":" << port << " (address in use?)\n";
        return kIo;
    }
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    std::thread waiter([&] {
        int sig = 0;
        sigwait(&set, &sig);
        server.stop();
    });
    std::cerr << "imla: listening on http://" << host << ":" << server.port() << "\n";
    server.run();
    // A stop that did not come from a signal leaves the waiter blocked; wake it.
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turkish grammar and spelling correction"};
    app.require_subcommand(1);

    Common common;

    std::string input_path;
    std::string format = "text";
    std::string correct_store;
    auto* correct = app.add_subcommand("correct", "Correct a file or stdin");
    add_common(correct, common);
    correct->add_option("input", input_path, "Input file ('-' or omitted: stdin)");
    correct->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "html"}));
    correct->add_option("--store", correct_store, "Also save the session to this store");

    std::string config_file;
    std::string serve_store;
    std::string host;
    int port = -1;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    add_common(serve_cmd, common);
    serve_cmd->add_option("--config", config_file, "KEY=VALUE config file");
    serve_cmd->add_option("--store", serve_store, "Store file (STORE_PATH)");
    serve_cmd->add_option("--port", port, "Port (PORT)");
    serve_cmd->add_option("--host", host, "Bind address (HOST)");

    std::string scenario_path;
    auto* eval = app.add_subcommand("eval", "Score the scenario sentences; prints a JSON report");
    add_common(eval, common);
    eval->add_option("--scenario", scenario_path, "Scenario TSV (default: bundled)");

    std::string sizes = "1000,2000,4000,8000,14000";
    std::string sentences_path;
    std::uint64_t seed = 42;
    int reps = 3;
    std::string mode = "inproc";
    auto* bench = app.add_subcommand("bench", "Time the pipeline; prints CSV words,millis");
    add_common(bench, common);
    bench->add_option("--sizes", sizes, "Comma-separated ascending word counts");
    bench->add_option("--sentences", sentences_path, "Reference sentence TSV (default: bundled)");
    bench->add_option("--seed", seed, "Corpus seed");
    bench->add_option("--reps", reps, "Repetitions per size (median reported)");
    bench->add_option("--mode", mode, "inproc or http (loopback)")->check(CLI::IsMember({"inproc", "http"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int const code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*correct) {
            auto const text = read_input(input_path);
            auto const pipeline = load_pipeline(common);
            auto const doc = pipeline.correct(text);
            if (format == "json") {
                std::cout << imla::to_json(doc).dump(2) << "\n";
            } else if (format == "html") {
                std::cout << imla::to_markup(doc) << "\n";
            } else {
                std::cout << imla::to_plain(doc);
            }
            if (!correct_store.empty()) {
                imla::Store store(correct_store);
                store.save_session(doc, imla::to_markup(doc), imla::Source::cli);
            }
            return kOk;
        }
        if (*serve_cmd) {
            auto cfg = imla::ServiceConfig::from_env();
            if (!config_file.empty()) cfg = imla::ServiceConfig::from_file(config_file, cfg);
            if (!common.catalog.empty()) cfg.catalog_path = common.catalog;
            if (!common.lexicons.empty()) cfg.lexicon_dir = common.lexicons;
            if (!serve_store.empty()) cfg.store_path = serve_store;
            if (port >= 0) cfg.port = port;
            if (!host.empty()) cfg.host = host;
            Common resolved = common;
            resolved.catalog = cfg.catalog_path.string();
            resolved.lexicons = cfg.lexicon_dir.string();
            auto pipeline = load_pipeline(resolved);
            std::shared_ptr<imla::Store> store;
            try {
                store = std::make_shared<imla::Store>(cfg.store_path);
            } catch (const imla::StoreError& e) {
                std::cerr << "imla: warning: " << e.what() << "; sessions will not be saved\n";
            }
            imla::Service service(std::move(pipeline), store, cfg);
            return serve(service, cfg.host, cfg.port);
        }
        if (*eval) {
            auto const pipeline = load_pipeline(common);
            auto const path = scenario_path.empty() ? imla::default_data_dir() / "scenario.tsv"
                                                    : std::filesystem::path(scenario_path);
            auto const report = imla::run_scenario(pipeline, imla::load_scenario(path));
            std::cout << report.to_json().dump(2) << "\n";
            return kOk;
        }
        if (*bench) {
            auto const pipeline = load_pipeline(common);
            auto const path = sentences_path.empty() ? imla::default_data_dir() / "reference_sentences.tsv"
                                                     : std::filesystem::path(sentences_path);
            auto const sentences = imla::load_reference_inputs(path);
            std::vector<std::size_t> size_list;
            try {
                size_list = parse_sizes(sizes);
            } catch (const std::exception&) {
                std::cerr << "imla: --sizes must be comma-separated integers\n";
                return kUsage;
            }
            imla::TimingReport report;
            if (mode == "http") {
                imla::ServiceConfig cfg;
                cfg.worker_threads = 1;
                imla::Service service(pipeline, nullptr, cfg);
                imla::HttpServer server(service);
                if (!server.bind("127.0.0.1", 0)) throw IoFailure("cannot bind a loopback port");
                std::thread runner([&] { server.run(); });
                httplib::Client client("127.0.0.1", server.port());
                client.set_read_timeout(600);
                auto http_runner = [&](const std::string& text) {
                    auto res = client.Post("/api/correct", nlohmann::json{{"text", text}}.dump(), "application/json");
                    if (!res || res->status != 200) throw IoFailure("loopback request failed");
                    return nlohmann::json::parse(res->body).at("corrected").get<std::string>();
                };
                report = imla::run_timing(http_runner, size_list, sentences, seed, reps);
                server.stop();
                runner.join();
            } else {
                report = imla::run_timing(imla::pipeline_runner(pipeline), size_list, sentences, seed, reps);
            }
            std::cout << report.csv();
            std::cerr << "pearson_r=" << report.pearson_r << "\n";
            return kOk;
        }
    } catch (const IoFailure& e) {
        std::cerr << "imla: " << e.what() << "\n";
        return kIo;
    } catch (const imla::StoreError& e) {
        std::cerr << "imla: " << e.what() << "\n";
        return kIo;
    } catch (const imla::ValidationError& e) {
        std::cerr << "imla: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "imla: " << e.what() << "\n";
        return kEngine;
    }
    return kUsage;
}
