#pragma once

#include <stdexcept>
#include <string>

namespace nlipm {

// Input outside the domain of a functional or operation (zero vector,
// empty cut side, constant vector where a nonconstant one is required).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A caller-supplied component broke its contract, e.g. an inner solver
// returned a point with positive inner objective.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// An iteration produced a vector it cannot normalize (S(g) = 0).
class DegenerateStep : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Disconnected graph where a connected one is required, or a repeated
// zero eigenvalue of the graph Laplacian.
class DisconnectedGraph : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace nlipm
