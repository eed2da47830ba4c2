#pragma once
// Error handling used across the engine: a lightweight Result<T> carrying
// either a value or an Error{code, message}.

#include <cassert>
#include <string>
#include <utility>
#include <variant>

namespace scout {

enum class ErrorCode {
    Io,
    NotFound,
    InvalidQuery,
    InvalidTask,
    Conflict,
    Ambiguous,
    Parse,
    Schema,
    Precondition,
    UnsupportedLanguage,
    Sandbox,
    Timeout,
    Transport,
    State,
    Internal,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Io: return "io-error";
        case ErrorCode::NotFound: return "not-found";
        case ErrorCode::InvalidQuery: return "invalid-query";
        case ErrorCode::InvalidTask: return "invalid-task";
        case ErrorCode::Conflict: return "conflict";
        case ErrorCode::Ambiguous: return "ambiguous";
        case ErrorCode::Parse: return "parse-error";
        case ErrorCode::Schema: return "schema-error";
        case ErrorCode::Precondition: return "precondition-error";
        case ErrorCode::UnsupportedLanguage: return "unsupported-language";
        case ErrorCode::Sandbox: return "sandbox-violation";
        case ErrorCode::Timeout: return "timeout";
        case ErrorCode::Transport: return "transport-error";
        case ErrorCode::State: return "state-error";
        case ErrorCode::Internal: return "internal-error";
    }
    return "unknown-error";
}

struct Error {
    ErrorCode code = ErrorCode::Internal;
    std::string message;

    std::string render() const {
        return std::string("error: ") + error_code_name(code) + ": " + message;
    }
};

template <typename T>
class Result {
public:
    Result(T value) : storage_(std::move(value)) {}
    Result(Error error) : storage_(std::move(error)) {}

    bool ok() const { return std::holds_alternative<T>(storage_); }
    explicit operator bool() const { return ok(); }

    T& value() {
        assert(ok());
        return std::get<T>(storage_);
    }
    const T& value() const {
        assert(ok());
        return std::get<T>(storage_);
    }
    T take() { return std::move(std::get<T>(storage_)); }

    const Error& error() const {
        assert(!ok());
        return std::get<Error>(storage_);
    }

private:
    std::variant<T, Error> storage_;
};

template <>
class Result<void> {
public:
    Result() = default;
    Result(Error error) : error_(std::move(error)), failed_(true) {}

    bool ok() const { return !failed_; }
    explicit operator bool() const { return ok(); }
    const Error& error() const {
        assert(failed_);
        return error_;
    }

private:
    Error error_;
    bool failed_ = false;
};

inline Error make_error(ErrorCode code, std::string message) {
    return Error{code, std::move(message)};
}

}  // namespace scout
