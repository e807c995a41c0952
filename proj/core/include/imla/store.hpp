#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "imla/annotator.hpp"

namespace imla {

enum class Source { web, api, cli };

std::string_view source_name(Source source);
/// Throws ValidationError for names other than web, api, cli.
Source parse_source(std::string_view name);

struct CorrectionSession {
    std::string session_id;
    std::string original;
    std::string corrected;
    std::string tagged_markup;
    nlohmann::json annotation_doc;
    std::string created_at;
    std::optional<std::string> correction_feedback;
    std::optional<std::string> feedback_at;
    Source source = Source::api;

    bool operator==(const CorrectionSession&) const = default;
};

struct GeneralFeedback {
    std::string feedback_id;
    std::string message;
    std::string created_at;

    bool operator==(const GeneralFeedback&) const = default;
};

nlohmann::json to_json(const CorrectionSession& session);
nlohmann::json to_json(const GeneralFeedback& feedback);

/// Single-file store: an append-only log of records, each a little-endian u32 byte length
/// followed by that many bytes of JSON. The in-memory index is rebuilt on open; a torn
/// final record (crash mid-append) is truncated away.
///
/// Appends are serialized and fsync'ed before the call returns; readers share a lock and
/// see every record whose save has returned.
class Store {
public:
    /// Opens or creates the file. Throws StoreError.
    explicit Store(std::filesystem::path path);
    ~Store();
    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    /// Throws ContractViolation if `markup` or the document are inconsistent, StoreError on I/O failure.
    std::string save_session(const AnnotatedDocument& doc, const std::string& markup, Source source);
    /// Throws NotFoundError, ValidationError (empty text), StoreError.
    CorrectionSession attach_correction_feedback(const std::string& session_id, const std::string& user_text);
    /// Throws ValidationError (blank message), StoreError.
    std::string save_general_feedback(const std::string& message);

    /// Throws NotFoundError.
    CorrectionSession get_session(const std::string& session_id) const;
    std::vector<CorrectionSession> list_sessions() const;
    std::vector<GeneralFeedback> list_feedback() const;
    std::size_t session_count() const;

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    void load();
    void apply(const nlohmann::json& record);
    void append(const nlohmann::json& record);
    std::string new_id();
    std::string timestamp();

    std::filesystem::path path_;
    int fd_ = -1;
    std::mutex write_mutex_;
    mutable std::shared_mutex index_mutex_;
    std::unordered_map<std::string, CorrectionSession> sessions_;
    std::vector<std::string> session_order_;
    std::vector<GeneralFeedback> feedback_;
    std::int64_t last_ms_ = 0;
};

}  // namespace imla
