#ifndef ANDI_ERRORS_HPP
#define ANDI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace andi {

// Error taxonomy shared across the toolkit. Everything derives from
// std::runtime_error (or std::invalid_argument for caller mistakes) so the
// CLI can map any failure to a single exit code.

struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside a model- or task-specific interval.
struct range_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct size_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct shape_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct integrity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested operation needs state that is not there (e.g. an unpopulated
// regressor bin).
struct state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input is valid but statistically degenerate (constant trajectory etc.).
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace andi

#endif
