#pragma once

#include <stdexcept>
#include <string>

namespace oil {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mixing values that live over different fields.
struct field_mismatch : error {
    using error::error;
};

/// Mixing values of different ambient matrix dimension.
struct dimension_mismatch : error {
    using error::error;
};

/// Out-of-range index, invalid parameter, precondition violation.
struct argument_error : error {
    using error::error;
};

/// Malformed textual input.
struct parse_error : error {
    using error::error;
};

/// A configured resource cap (degree, rows, pairs) was hit. This is not a
/// mathematical result: callers must report it as `inconclusive`, never as
/// a boolean answer.
struct resource_limit : error {
    using error::error;
};

} // namespace oil
