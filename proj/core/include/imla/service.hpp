#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include "json.hpp"

#include "imla/pipeline.hpp"
#include "imla/store.hpp"

namespace imla {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path store_path = "imla-store.log";
    std::filesystem::path lexicon_dir;
    std::filesystem::path catalog_path;
    std::size_t max_input_chars = 100000;
    std::string allowed_origin = "*";
    std::size_t worker_threads = 16;

    /// Recognised keys: PORT, HOST, STORE_PATH, LEXICON_DIR, CATALOG_PATH, MAX_INPUT_CHARS,
    /// ALLOWED_ORIGIN, WORKERS. Throws ValidationError for bad values; unknown keys are ignored.
    void set(const std::string& key, const std::string& value);
    /// Defaults overlaid by any of the recognised environment variables.
    static ServiceConfig from_env();
    /// KEY=VALUE lines, '#' comments, applied over `base`.
    static ServiceConfig from_file(const std::filesystem::path& path, ServiceConfig base);
    static ServiceConfig from_file(const std::filesystem::path& path);
};

struct Response {
    int status = 200;
    nlohmann::json body;
};

/// Transport-independent request handlers. The store may be null (persistence disabled);
/// correction still succeeds and the response carries a warning.
class Service {
public:
    Service(Pipeline pipeline, std::shared_ptr<Store> store, ServiceConfig config);
    Service(Pipeline pipeline, std::shared_ptr<Store> store);

    Response handle_correct(const std::string& body, Source default_source = Source::api) const;
    Response handle_correction_feedback(const std::string& session_id, const std::string& body) const;
    Response handle_general_feedback(const std::string& body) const;
    Response get_rules() const;
    Response get_session(const std::string& session_id) const;
    Response health() const;

    const ServiceConfig& config() const noexcept { return config_; }
    const Pipeline& pipeline() const noexcept { return pipeline_; }
    Store* store() const noexcept { return store_.get(); }

private:
    Pipeline pipeline_;
    std::shared_ptr<Store> store_;
    ServiceConfig config_;
};

/// HTTP/1.1 front end over a bounded worker pool.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Port 0 picks a free port. Returns false when the address cannot be bound.
    bool bind(const std::string& host, int port);
    int port() const;
    /// Blocks until stop().
    void run();
    void stop();
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace imla
