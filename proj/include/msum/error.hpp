#pragma once

#include <stdexcept>
#include <string>

namespace msum {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid summary specification or value/spec mismatch.
struct SpecError : Error {
    using Error::Error;
};

/// Attempted merge between incompatible summaries.
struct MergeError : Error {
    using Error::Error;
};

/// Malformed input file, schema, or serialized payload.
struct ParseError : Error {
    using Error::Error;
};

} // namespace msum
