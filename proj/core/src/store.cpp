#include "imla/store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <random>

#include "imla/errors.hpp"

namespace imla {
namespace {

using nlohmann::json;

std::string errno_text() { return std::strerror(errno); }

std::string format_ms(std::int64_t ms) {
    std::time_t const secs = static_cast<std::time_t>(ms / 1000);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                  tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms % 1000));
    return buf;
}

std::int64_t parse_ms(const std::string& ts) {
    std::tm tm{};
    int ms = 0;
    if (std::sscanf(ts.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3dZ", &tm.tm_year, &tm.tm_mon, &tm.tm_mday, &tm.tm_hour,
                    &tm.tm_min, &tm.tm_sec, &ms)
        != 7)
        return 0;
    tm.tm_year -= 1900;
    tm.tm_mon -= 1;
    return static_cast<std::int64_t>(timegm(&tm)) * 1000 + ms;
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::string_view source_name(Source source) {
    switch (source) {
        case Source::web: return "web";
        case Source::api: return "api";
        case Source::cli: return "cli";
    }
    return "api";
}

Source parse_source(std::string_view name) {
    if (name == "web") return Source::web;
    if (name == "api") return Source::api;
    if (name == "cli") return Source::cli;
    throw ValidationError("unknown source: " + std::string(name));
}

json to_json(const CorrectionSession& s) {
    return json{
        {"session_id", s.session_id},
        {"original", s.original},
        {"corrected", s.corrected},
        {"tagged_markup", s.tagged_markup},
        {"annotation_doc", s.annotation_doc},
        {"created_at", s.created_at},
        {"correction_feedback", s.correction_feedback ? json(*s.correction_feedback) : json(nullptr)},
        {"feedback_at", s.feedback_at ? json(*s.feedback_at) : json(nullptr)},
        {"source", source_name(s.source)},
    };
}

json to_json(const GeneralFeedback& f) {
    return json{{"feedback_id", f.feedback_id}, {"message", f.message}, {"created_at", f.created_at}};
}

Store::Store(std::filesystem::path path) : path_(std::move(path)) {
    fd_ = ::open(path_.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) throw StoreError(path_.string() + ": cannot open store: " + errno_text());
    try {
        load();
    } catch (...) {
        ::close(fd_);
        throw;
    }
}

Store::~Store() {
    if (fd_ >= 0) ::close(fd_);
}

void Store::load() {
    struct stat st {};
    if (::fstat(fd_, &st) != 0) throw StoreError(path_.string() + ": " + errno_text());
    // Devices and pipes hold no prior records.
    if (!S_ISREG(st.st_mode)) return;
    std::string data(static_cast<std::size_t>(st.st_size), '\0');
    std::size_t got = 0;
    while (got < data.size()) {
        auto const n = ::pread(fd_, data.data() + got, data.size() - got, static_cast<off_t>(got));
        if (n < 0) throw StoreError(path_.string() + ": read failed: " + errno_text());
        if (n == 0) break;
        got += static_cast<std::size_t>(n);
    }
    data.resize(got);

    std::size_t pos = 0;
    while (pos + 4 <= data.size()) {
        auto const* p = reinterpret_cast<const unsigned char*>(data.data() + pos);
        std::uint32_t const len = p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
        if (pos + 4 + len > data.size()) break;
        json record;
        try {
            record = json::parse(data.begin() + static_cast<std::ptrdiff_t>(pos + 4),
                                 data.begin() + static_cast<std::ptrdiff_t>(pos + 4 + len));
            apply(record);
        } catch (const std::exception&) {
            break;
        }
        pos += 4 + len;
    }
    if (pos != data.size()) {
        if (::ftruncate(fd_, static_cast<off_t>(pos)) != 0)
            throw StoreError(path_.string() + ": cannot truncate torn record: " + errno_text());
    }
}

void Store::apply(const json& r) {
    auto const kind = r.at("kind").get<std::string>();
    if (kind == "session") {
        CorrectionSession s;
        s.session_id = r.at("session_id").get<std::string>();
        s.original = r.at("original").get<std::string>();
        s.corrected = r.at("corrected").get<std::string>();
        s.tagged_markup = r.at("tagged_markup").get<std::string>();
        s.annotation_doc = r.at("annotation_doc");
        s.created_at = r.at("created_at").get<std::string>();
        s.source = parse_source(r.at("source").get<std::string>());
        last_ms_ = std::max(last_ms_, parse_ms(s.created_at));
        if (sessions_.emplace(s.session_id, s).second) session_order_.push_back(s.session_id);
    } else if (kind == "session_feedback") {
        auto const it = sessions_.find(r.at("session_id").get<std::string>());
        if (it == sessions_.end()) return;
        it->second.correction_feedback = r.at("text").get<std::string>();
        it->second.feedback_at = r.at("created_at").get<std::string>();
        last_ms_ = std::max(last_ms_, parse_ms(*it->second.feedback_at));
    } else if (kind == "general_feedback") {
        GeneralFeedback f{r.at("feedback_id").get<std::string>(), r.at("message").get<std::string>(),
                          r.at("created_at").get<std::string>()};
        last_ms_ = std::max(last_ms_, parse_ms(f.created_at));
        feedback_.push_back(std::move(f));
    }
}

void Store::append(const json& record) {
    auto const body = record.dump();
    std::uint32_t const len = static_cast<std::uint32_t>(body.size());
    std::string frame;
    frame.reserve(body.size() + 4);
    for (int k = 0; k < 4; ++k) frame.push_back(static_cast<char>((len >> (8 * k)) & 0xFF));
    frame += body;
    std::size_t done = 0;
    while (done < frame.size()) {
        auto const n = ::write(fd_, frame.data() + done, frame.size() - done);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw StoreError(path_.string() + ": write failed: " + errno_text());
        }
        done += static_cast<std::size_t>(n);
    }
    if (::fsync(fd_) != 0 && errno != EINVAL && errno != EROFS)
        throw StoreError(path_.string() + ": fsync failed: " + errno_text());
}

std::string Store::new_id() {
    static thread_local std::random_device rd;
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (int k = 0; k < 4; ++k) {
        std::uint32_t v = rd();
        for (int b = 0; b < 8; ++b) {
            out.push_back(hex[v & 0xF]);
            v >>= 4;
        }
    }
    return out;
}

std::string Store::timestamp() {
    auto const now = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
    last_ms_ = std::max<std::int64_t>(last_ms_, now);
    return format_ms(last_ms_);
}

std::string Store::save_session(const AnnotatedDocument& doc, const std::string& markup, Source source) {
    if (auto const problem = check_invariants(doc); !problem.empty())
        throw ContractViolation("annotation document is inconsistent: " + problem);
    if (markup != to_markup(doc)) throw ContractViolation("markup does not match the annotation document");
    std::lock_guard write_lock(write_mutex_);
    CorrectionSession s;
    // Only writers mutate the index and they hold write_mutex_, so this read is safe.
    do {
        s.session_id = new_id();
    } while (sessions_.count(s.session_id));
    s.original = doc.original;
    s.corrected = doc.corrected;
    s.tagged_markup = markup;
    s.annotation_doc = to_json(doc);
    s.created_at = timestamp();
    s.source = source;
    json record = to_json(s);
    record.erase("correction_feedback");
    record.erase("feedback_at");
    record["kind"] = "session";
    append(record);
    std::unique_lock index_lock(index_mutex_);
    sessions_.emplace(s.session_id, s);
    session_order_.push_back(s.session_id);
    return s.session_id;
}

CorrectionSession Store::attach_correction_feedback(const std::string& session_id, const std::string& user_text) {
    if (blank(user_text)) throw ValidationError("correction feedback must not be empty");
    std::lock_guard write_lock(write_mutex_);
    if (!sessions_.count(session_id)) throw NotFoundError("unknown session " + session_id);
    auto const at = timestamp();
    append(json{{"kind", "session_feedback"}, {"session_id", session_id}, {"text", user_text}, {"created_at", at}});
    std::unique_lock index_lock(index_mutex_);
    auto& s = sessions_.at(session_id);
    s.correction_feedback = user_text;
    s.feedback_at = at;
    return s;
}

std::string Store::save_general_feedback(const std::string& message) {
    if (blank(message)) throw ValidationError("feedback message must not be empty");
    std::lock_guard write_lock(write_mutex_);
    GeneralFeedback f{new_id(), message, timestamp()};
    append(json{{"kind", "general_feedback"}, {"feedback_id", f.feedback_id}, {"message", f.message},
                {"created_at", f.created_at}});
    std::unique_lock index_lock(index_mutex_);
    feedback_.push_back(f);
    return f.feedback_id;
}

CorrectionSession Store::get_session(const std::string& session_id) const {
    std::shared_lock lock(index_mutex_);
    auto const it = sessions_.find(session_id);
    if (it == sessions_.end()) throw NotFoundError("unknown session " + session_id);
    return it->second;
}

std::vector<CorrectionSession> Store::list_sessions() const {
    std::shared_lock lock(index_mutex_);
    std::vector<CorrectionSession> out;
    out.reserve(session_order_.size());
    for (auto const& id : session_order_) out.push_back(sessions_.at(id));
    return out;
}

std::vector<GeneralFeedback> Store::list_feedback() const {
    std::shared_lock lock(index_mutex_);
    return feedback_;
}

std::size_t Store::session_count() const {
    std::shared_lock lock(index_mutex_);
    return sessions_.size();
}

}  // namespace imla
