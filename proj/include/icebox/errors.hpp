#pragma once

#include <stdexcept>
#include <string>

namespace icebox {

// Raised when a configuration violates the two-in-two-out rule at an internal vertex.
struct IceRuleViolation : std::runtime_error {
    int vertex;
    explicit IceRuleViolation(int v, const std::string& what)
        : std::runtime_error(what), vertex(v) {}
};

// Raised when a chain is requested on a geometry where it provably cannot reach
// the whole state space (single-face flips on the torus).
struct NotIrreducible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an exhaustive computation would exceed its configured state budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a caller hands in a witness object (path, cut, state index) that
// does not belong to the configuration or graph it is used with.
struct InvalidWitness : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised for malformed experiment configuration (CLI or JSON).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace icebox
