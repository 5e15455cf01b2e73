#pragma once

#include <stdexcept>
#include <string>

namespace conduit {

/// Input could not be parsed (malformed CSV, bad numbers, unknown codes).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation invoked outside its contract (degenerate query, filtered input
/// where an unfiltered graph is required, empty graph, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace conduit
