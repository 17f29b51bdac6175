#ifndef TRAITLAB_ERROR_HPP
#define TRAITLAB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace traitlab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A machine description or an auxiliary document failed to parse.
/// `line` is 1-based; 0 means "end of document".
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A value would break a structural invariant of a domain type.
class InvariantError : public Error {
public:
    InvariantError(std::string field, const std::string& what) : Error(what), field_(std::move(field)) {}

    /// Name of the offending field, as spelled in the text format ("states", "delta", ...).
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// An operation was called outside its precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace traitlab

#endif
