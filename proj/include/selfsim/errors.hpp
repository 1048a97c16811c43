#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selfsim {

/// Circulant embedding produced an eigenvalue below the numerical-noise
/// threshold. For fGn embeddings this indicates an implementation bug.
class EmbeddingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Hurst estimate could not be formed (constant trace, or fewer than
/// four usable scales after dropping degenerate ones).
class NonEstimableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace selfsim
