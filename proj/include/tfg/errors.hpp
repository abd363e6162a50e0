#pragma once

#include <stdexcept>
#include <string>

namespace tfg {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text; carries a "file:line: message" diagnostic.
struct parse_error : error {
    parse_error(const std::string& source, int line, const std::string& msg)
        : error(source + ":" + std::to_string(line) + ": " + msg),
          source(source), line(line) {}
    std::string source;
    int line;
};

// Operation invoked with arguments violating a precondition.
struct invalid_argument : error {
    using error::error;
};

// Requested decision needs a finite group but the group is infinite.
struct unsupported_infinite : error {
    using error::error;
};

// Finite group exceeds the configured order cap.
struct group_too_large : error {
    using error::error;
};

// Permutation-group closure exceeds the configured element cap.
struct closure_too_large : error {
    using error::error;
};

// A bounded search ran out of budget; the bound can be raised.
struct bound_exhausted : error {
    using error::error;
};

}  // namespace tfg
