#pragma once

#include <stdexcept>
#include <string>

namespace uniflab {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid input or a violated precondition (bad partition data, carrier
// mismatch, non-closed element set, ...).
struct ValidationError : Error {
    using Error::Error;
};

// A configured size cap was exceeded. Caps fail loudly, they are never
// silently skipped.
struct CapError : Error {
    using Error::Error;
};

} // namespace uniflab
