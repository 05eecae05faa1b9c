#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace citerank {

// Base for every error the library reports. Callers that only need a message
// can catch this; the CLI maps it to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyReferenceSet : public Error {
public:
    EmptyReferenceSet() : Error("reference set is empty") {}
};

class InvalidCitation : public Error {
public:
    explicit InvalidCitation(long long value)
        : Error("invalid citation count " + std::to_string(value) + " (must be >= 0)"), value_(value) {}

    long long value() const noexcept { return value_; }

private:
    long long value_;
};

// All papers share one citation count, so there are no rank differences to scale.
class DegenerateReferenceSet : public Error {
public:
    DegenerateReferenceSet()
        : Error("degenerate reference set: all papers have the same citation count") {}
};

class InvalidScheme : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column '" + column + "': " + what),
          line_(line), column_(std::move(column)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::string column_;
};

class DuplicateId : public Error {
public:
    explicit DuplicateId(std::string id)
        : Error("duplicate record id '" + id + "'"), id_(std::move(id)) {}

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class UnknownPaper : public Error {
public:
    explicit UnknownPaper(std::string id)
        : Error("score row refers to unknown paper '" + id + "'"), id_(std::move(id)) {}

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

}  // namespace citerank
