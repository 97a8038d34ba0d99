#pragma once

#include <stdexcept>
#include <string>

namespace martkit {

/// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid value at construction time (zero denominator, negative weight, ...).
struct domain_error : error {
    using error::error;
};

/// Vectors or tables of different dimensions were mixed.
struct dimension_error : error {
    using error::error;
};

/// Outcome sets, partitions or processes living on different universes or
/// horizons were combined, or an index is out of range.
struct universe_error : error {
    using error::error;
};

/// A documented precondition of an operation does not hold.
struct precondition_error : error {
    using error::error;
};

/// An exhaustive event enumeration would exceed the configured cap.
struct capacity_error : error {
    using error::error;
};

/// The operation is not defined for the given value space.
struct unsupported_error : error {
    using error::error;
};

/// An order comparison was requested on a value space with no order (d > 1).
struct unsupported_order_error : unsupported_error {
    using unsupported_error::unsupported_error;
};

/// Malformed input document.
struct parse_error : error {
    using error::error;
};

/// Two routes that must agree by theorem disagreed. Always a bug.
struct invariant_violation : error {
    using error::error;
};

} // namespace martkit
