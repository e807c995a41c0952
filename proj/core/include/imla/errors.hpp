#pragma once

#include <stdexcept>
#include <string>

namespace imla {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent rule catalog file.
class CatalogError : public Error {
public:
    using Error::Error;
};

/// Malformed lexicon directory or lexicon file.
class LexiconError : public Error {
public:
    using Error::Error;
};

/// A lookup by id found nothing.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// An argument outside the domain of a phonology operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// User-supplied data failed validation (empty feedback, oversized text, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A caller broke a documented precondition (overlapping corrections, bad offsets).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Storage I/O failure.
class StoreError : public Error {
public:
    using Error::Error;
};

/// The grammar engine could not apply a detection it produced itself.
class EngineError : public Error {
public:
    EngineError(int rule_id, std::size_t span_start, std::size_t span_end, const std::string& what)
        : Error("rule " + std::to_string(rule_id) + " at [" + std::to_string(span_start) + ","
                + std::to_string(span_end) + "): " + what),
          rule_id_(rule_id), span_start_(span_start), span_end_(span_end) {}

    int rule_id() const noexcept { return rule_id_; }
    std::size_t span_start() const noexcept { return span_start_; }
    std::size_t span_end() const noexcept { return span_end_; }

private:
    int rule_id_;
    std::size_t span_start_;
    std::size_t span_end_;
};

}  // namespace imla
