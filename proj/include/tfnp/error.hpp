#pragma once

#include <stdexcept>
#include <string>

namespace tfnp {

// Operator or contract errors: bad widths, malformed files, unsupported
// parameters, exceeded enumeration caps. The CLI maps these to exit code 2,
// distinct from exit code 1 (a well-formed certificate that a verifier
// rejects).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text. Messages carry a line number where one applies.
struct ParseError : UsageError {
    explicit ParseError(const std::string& what) : UsageError(what) {}
};

}  // namespace tfnp
