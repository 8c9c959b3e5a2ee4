#pragma once

#include <stdexcept>
#include <string>

namespace ctlsync {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed Kripke structure (dead ends, unknown names, bad indices).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A resource budget was exhausted. Never a verdict.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Input too large for an exhaustive procedure.
class SizeExceeded : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class EmptyClause : public Error {
public:
    using Error::Error;
};

}  // namespace ctlsync
