#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dgakit {

// Broad failure categories, mapped to distinct CLI exit codes.
enum class ErrorKind { usage, data, runtime };

// Base error carrying a short machine-readable code (e.g. "TooLong") next to
// the human-readable message. The code is what goes on the wire for
// per-domain failures.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& message)
        : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

class DataError : public Error {
public:
    DataError(std::string code, const std::string& message)
        : Error(ErrorKind::data, std::move(code), message) {}
};

class RuntimeError : public Error {
public:
    RuntimeError(std::string code, const std::string& message)
        : Error(ErrorKind::runtime, std::move(code), message) {}
};

}  // namespace dgakit
