#pragma once
#include <stdexcept>
#include <string>

namespace fpcoh {

// Bad input: malformed corpus entries, failed relator checks, violated preconditions.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured size cap would be exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A theorem-backed identity failed (d1*d0 != 0, |h1 - omega1| > delta0, ...).
// Always a bug.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace fpcoh
