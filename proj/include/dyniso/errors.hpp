#pragma once

#include <stdexcept>
#include <string>

namespace dyniso {

// Malformed input text (bad graph6 byte, bad edge-list line, ...).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t byte = 0)
        : std::runtime_error(locate(what, line, byte)), line_(line), byte_(byte) {}

    std::size_t line() const { return line_; }
    std::size_t byte() const { return byte_; }

private:
    static std::string locate(const std::string& what, std::size_t line, std::size_t byte) {
        std::string s = what;
        if (line) s += " (line " + std::to_string(line) + ")";
        if (byte) s += " (byte " + std::to_string(byte) + ")";
        return s;
    }
    std::size_t line_;
    std::size_t byte_;
};

// Structurally well-formed input that violates a domain rule (loop edge,
// vertex index out of range, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke a documented precondition.
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

// The implementation contradicted an invariant that is supposed to hold
// unconditionally (non-integer scaled coefficient, refinement overrunning
// its step bound).  Signals a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Two simulated points came closer than the configured distance floor.
class SingularityError : public std::runtime_error {
public:
    explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dyniso
