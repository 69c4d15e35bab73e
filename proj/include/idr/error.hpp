#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idr {

/// Bad input data or parameters. The CLI maps this to exit code 1.
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A malformed line in a text input; `line()` is 1-based.
class ParseError : public InputError
{
public:
    ParseError(std::size_t line, const std::string& reason)
        : InputError("line " + std::to_string(line) + ": " + reason)
        , line_(line)
        , reason_(reason)
    {
    }

    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

/// An internal consistency check failed. The CLI maps this to exit code 2.
class InvariantViolation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace idr
