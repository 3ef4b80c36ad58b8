// errors.hpp - exception types shared by all arithmos modules.
#pragma once

#include <set>
#include <stdexcept>
#include <string>

namespace arithmos {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Ungrammatical input. Carries the byte offset of the offending token and
// the set of token spellings that would have been accepted there.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset, std::set<std::string> expected)
        : Error(msg), offset_(offset), expected_(std::move(expected)) {}
    std::size_t offset() const { return offset_; }
    const std::set<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::set<std::string> expected_;
};

// Identifier outside the fixed function/constant vocabulary.
class UnknownIdentifierError : public Error {
public:
    UnknownIdentifierError(std::string name, std::size_t offset)
        : Error("unknown identifier '" + name + "'"), name_(std::move(name)), offset_(offset) {}
    const std::string& name() const { return name_; }
    std::size_t offset() const { return offset_; }

private:
    std::string name_;
    std::size_t offset_;
};

// ln(0), 0^(-n), division by literal zero, trig poles at literal points.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

class DivisionByZero : public DomainError {
public:
    explicit DivisionByZero(const std::string& msg) : DomainError(msg) {}
};

// Result degree or coefficient size exceeded DegreeCapConfig.
class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& msg) : Error(msg) {}
};

// A numeric decision could not be made within the precision ceiling.
class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

// Verdict natures would become empty; signals an unsound rule, never user error.
class ContradictionError : public Error {
public:
    explicit ContradictionError(const std::string& msg) : Error(msg) {}
};

class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& msg) : Error(msg) {}
};

}  // namespace arithmos
