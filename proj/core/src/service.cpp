#include "imla/service.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>

#include "httplib.h"

#include "imla/errors.hpp"
#include "imla/utf8.hpp"

namespace imla {
namespace {

using nlohmann::json;

Response error(int status, const std::string& message) { return {status, json{{"error", message}}}; }

std::size_t parse_count(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        long long const n = std::stoll(value, &used);
        if (used != value.size() || n < 0) throw std::invalid_argument(value);
        return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
        throw ValidationError(key + " must be a non-negative integer, got '" + value + "'");
    }
}

// Parsed JSON object body, or nullopt with `err` filled.
std::optional<json> parse_object(const std::string& body, Response& err) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        err = error(400, "request body must be a JSON object");
        return std::nullopt;
    }
    return j;
}

std::optional<std::string> string_field(const json& j, std::initializer_list<const char*> keys) {
    for (auto const* k : keys) {
        if (j.contains(k) && j[k].is_string()) return j[k].get<std::string>();
    }
    return std::nullopt;
}

}  // namespace

void ServiceConfig::set(const std::string& key, const std::string& value) {
    if (key == "PORT") {
        auto const p = parse_count(key, value);
        if (p > 65535) throw ValidationError("PORT out of range: " + value);
        port = static_cast<int>(p);
    } else if (key == "HOST") {
        host = value;
    } else if (key == "STORE_PATH") {
        store_path = value;
    } else if (key == "LEXICON_DIR") {
        lexicon_dir = value;
    } else if (key == "CATALOG_PATH") {
        catalog_path = value;
    } else if (key == "MAX_INPUT_CHARS") {
        max_input_chars = parse_count(key, value);
    } else if (key == "ALLOWED_ORIGIN") {
        allowed_origin = value;
    } else if (key == "WORKERS") {
        worker_threads = std::max<std::size_t>(1, parse_count(key, value));
    }
}

ServiceConfig ServiceConfig::from_env() {
    ServiceConfig c;
    for (char const* key : {"PORT", "HOST", "STORE_PATH", "LEXICON_DIR", "CATALOG_PATH", "MAX_INPUT_CHARS",
                            "ALLOWED_ORIGIN", "WORKERS"}) {
        if (char const* v = std::getenv(key); v && *v) c.set(key, v);
    }
    return c;
}

ServiceConfig ServiceConfig::from_file(const std::filesystem::path& path, ServiceConfig base) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path.string() + ": cannot open config file");
    std::string line;
    while (std::getline(in, line)) {
        if (auto const hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto const eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

ServiceConfig ServiceConfig::from_file(const std::filesystem::path& path) { return from_file(path, ServiceConfig{}); }

Service::Service(Pipeline pipeline, std::shared_ptr<Store> store)
    : Service(std::move(pipeline), std::move(store), ServiceConfig{}) {}

Service::Service(Pipeline pipeline, std::shared_ptr<Store> store, ServiceConfig config)
    : pipeline_(std::move(pipeline)), store_(std::move(store)), config_(std::move(config)) {}

Response Service::handle_correct(const std::string& body, Source default_source) const {
    auto const t0 = std::chrono::steady_clock::now();
    Response err;
    auto const req = parse_object(body, err);
    if (!req) return err;
    auto const text = string_field(*req, {"text"});
    if (!text) return error(400, "field 'text' (string) is required");
    if (!utf8::is_valid(*text)) return error(400, "text must be valid UTF-8");
    if (utf8::length(*text) > config_.max_input_chars)
        return error(413, "text exceeds " + std::to_string(config_.max_input_chars) + " characters");
    Source source = default_source;
    if (auto const s = string_field(*req, {"source"})) {
        try {
            source = parse_source(*s);
        } catch (const ValidationError& e) {
            return error(400, e.what());
        }
    }

    AnnotatedDocument doc;
    std::string markup;
    try {
        doc = pipeline_.correct(*text);
        markup = to_markup(doc);
    } catch (const std::exception&) {
        return error(500, "internal error");
    }

    json warnings = json::array();
    json session_id = nullptr;
    if (!store_) {
        warnings.push_back("persistence disabled; session not saved");
    } else {
        try {
            session_id = store_->save_session(doc, markup, source);
        } catch (const std::exception&) {
            warnings.push_back("session could not be saved");
        }
    }
    auto const doc_json = to_json(doc);
    json out{
        {"session_id", session_id},
        {"original", doc.original},
        {"corrected", doc.corrected},
        {"markup", markup},
        {"annotations", doc_json["annotations"]},
        {"engine_version", doc.engine_version},
        {"lexicon_version", doc.lexicon_version},
    };
    if (!warnings.empty()) out["warnings"] = warnings;
    out["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return {200, out};
}

Response Service::handle_correction_feedback(const std::string& session_id, const std::string& body) const {
    if (!store_) return error(503, "persistence disabled");
    Response err;
    auto const req = parse_object(body, err);
    if (!req) return err;
    auto const text = string_field(*req, {"corrected_text", "text"});
    if (!text) return error(400, "field 'corrected_text' (string) is required");
    try {
        store_->attach_correction_feedback(session_id, *text);
    } catch (const NotFoundError& e) {
        return error(404, e.what());
    } catch (const ValidationError& e) {
        return error(400, e.what());
    } catch (const std::exception&) {
        return error(500, "feedback could not be saved");
    }
    return {200, json{{"status", "ok"}, {"session_id", session_id}}};
}

Response Service::handle_general_feedback(const std::string& body) const {
    if (!store_) return error(503, "persistence disabled");
    Response err;
    auto const req = parse_object(body, err);
    if (!req) return err;
    auto const message = string_field(*req, {"message"});
    if (!message) return error(400, "field 'message' (string) is required");
    try {
        auto const id = store_->save_general_feedback(*message);
        return {200, json{{"status", "ok"}, {"feedback_id", id}}};
    } catch (const ValidationError& e) {
        return error(400, e.what());
    } catch (const std::exception&) {
        return error(500, "feedback could not be saved");
    }
}

Response Service::get_rules() const {
    json rules = json::array();
    for (auto const& r : pipeline_.catalog().rules()) {
        rules.push_back({
            {"rule_id", r.rule_id},
            {"mnemonic", r.mnemonic},
            {"category", r.category},
            {"color", r.color},
            {"description_tr", r.description_tr},
            {"description_en", r.description_en},
            {"example_before", r.example_before},
            {"example_after", r.example_after},
        });
    }
    return {200, json{{"version", pipeline_.catalog().version()}, {"rules", rules}}};
}

Response Service::get_session(const std::string& session_id) const {
    if (!store_) return error(503, "persistence disabled");
    try {
        return {200, to_json(store_->get_session(session_id))};
    } catch (const NotFoundError& e) {
        return error(404, e.what());
    }
}

Response Service::health() const {
    return {200, json{{"status", "ok"},
                      {"engine_version", std::string(engine_version())},
                      {"lexicon_version", pipeline_.lexicon_version()},
                      {"persistence", store_ != nullptr}}};
}

struct HttpServer::Impl {
    explicit Impl(Service& s) : service(s) {}
    Service& service;
    httplib::Server server;
    int port = -1;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
    auto& srv = impl_->server;
    auto const& cfg = service.config();
    std::size_t const workers = cfg.worker_threads;
    srv.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
    // The library default adds SO_REUSEPORT, which would let a second server share an occupied port.
    srv.set_socket_options([](auto sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    // Bodies above the character limit are measured in bytes here; 4 bytes per code point bounds it.
    srv.set_payload_max_length(cfg.max_input_chars * 4 + 4096);
    srv.set_default_headers({{"Access-Control-Allow-Origin", cfg.allowed_origin},
                             {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"},
                             {"Vary", "Origin"}});

    auto reply = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json; charset=utf-8");
    };
    Service* svc = &service;
    srv.Post("/api/correct", [svc, reply](const httplib::Request& req, httplib::Response& res) {
        Source source = Source::api;
        if (req.has_header("X-Client") && req.get_header_value("X-Client") == "web") source = Source::web;
        reply(res, svc->handle_correct(req.body, source));
    });
    srv.Post(R"(/api/sessions/([0-9a-f]+)/feedback)", [svc, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, svc->handle_correction_feedback(req.matches[1], req.body));
    });
    srv.Post("/api/feedback", [svc, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, svc->handle_general_feedback(req.body));
    });
    srv.Get("/api/rules", [svc, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, svc->get_rules());
    });
    srv.Get(R"(/api/sessions/([^/]+))", [svc, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, svc->get_session(req.matches[1]));
    });
    srv.Get("/health", [svc, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, svc->health());
    });
    srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    srv.set_error_handler([reply](const httplib::Request&, httplib::Response& res) {
        if (!res.body.empty()) return;
        if (res.status == 413) {
            reply(res, error(413, "request body too large"));
        } else if (res.status == 404) {
            reply(res, error(404, "no such route"));
        } else if (res.status >= 400) {
            reply(res, error(res.status, "request failed"));
        }
    });
    srv.set_exception_handler([reply](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        reply(res, error(500, "internal error"));
    });
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::bind(const std::string& host, int port) {
    if (port == 0) {
        impl_->port = impl_->server.bind_to_any_port(host);
        return impl_->port > 0;
    }
    if (!impl_->server.bind_to_port(host, port)) return false;
    impl_->port = port;
    return true;
}

int HttpServer::port() const { return impl_->port; }

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace imla
