#pragma once

#include "msum/combinators.hpp"

#include <string>

namespace msum {

/// One-line human-readable rendering of a summary ("n=4 mean=2.75 ...").
/// Numbers use shortest round-trip decimals, so output is deterministic.
std::string to_text(const Summary& s);

/// Plain-text table of a schema summary, one variable per row.
std::string to_table(const SchemaSummary& s);

} // namespace msum
