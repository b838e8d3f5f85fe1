#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ubirk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; 0 means "unknown".
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(format(what, line, column)), line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column)
    {
        if (line == 0)
            return what;
        return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

/// A configured size limit would be exceeded. Never answered by truncation.
class CapExceeded : public Error {
public:
    using Error::Error;
};

class SignatureMismatch : public Error {
public:
    using Error::Error;
};

/// An argument violates an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A decision was requested on a clone level that did not reach its fixpoint.
class IncompleteLevel : public Error {
public:
    using Error::Error;
};

/// An identity guaranteed by the theory failed; indicates a bug, never bad input.
class InternalConsistency : public Error {
public:
    using Error::Error;
};

} // namespace ubirk
