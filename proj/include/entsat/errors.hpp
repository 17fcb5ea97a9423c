#pragma once

#include <stdexcept>
#include <string>

namespace entsat {

// Bad input or a broken construction contract (maps to CLI exit code 1).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Work refused because it would exceed a configured cap (CLI exit code 2).
class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejection sampling ran out of attempts; carries how many were used.
class GenerationError : public std::runtime_error {
public:
    GenerationError(const std::string& msg, int attempts)
        : std::runtime_error(msg), attempts_(attempts) {}
    int attempts() const { return attempts_; }

private:
    int attempts_;
};

} // namespace entsat
