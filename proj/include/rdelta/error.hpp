#pragma once

#include <stdexcept>
#include <string>

namespace rdelta {

enum class ErrorKind {
    MalformedLine,
    NonPositiveExponent,
    AdjacentEqualRuns,
    ExponentOverflow,
    ParamOutOfRange,
    InputTooLarge,
};

const char* to_string(ErrorKind kind) noexcept;

// Bad input: malformed files, out-of-range parameters. CLI exit code 1.
class InputError : public std::runtime_error {
public:
    InputError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// An internal consistency check failed. Always a bug, never bad input. CLI exit code 2.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what)
        : std::logic_error("InvariantViolation: " + what) {}
};

}  // namespace rdelta
