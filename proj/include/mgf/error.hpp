#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mgf {

enum class ErrorKind {
    DimensionMismatch,
    Overflow,
    InvalidArgument,
    ModeMismatch,
    OutOfTruncation,
    InsufficientTruncation,
    NonzeroConstantTerm,
    InvalidDistribution,
    UnboundedFiber,
    EmptyFiber,
    ZeroProbability,
    ConfigError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so the CLI can report
// it in structured form.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace mgf
