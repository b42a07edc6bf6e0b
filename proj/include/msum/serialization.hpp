#pragma once

#include "msum/combinators.hpp"
#include "msum/verification.hpp"

#include <json.hpp>

#include <string>

namespace msum::engine {

/// Encoding of numeric data fields inside serialized summaries.
///   decimal — human-readable: integers plain, doubles as shortest
///             round-trip decimals (lossless).
///   hex     — fixed-width: every numeric data field as a 16-hex-digit
///             string (IEEE-754 bit pattern for doubles), so the byte
///             length of a payload depends only on the spec parameters.
enum class NumericMode { decimal, hex };

std::string_view numeric_mode_name(NumericMode m);
NumericMode numeric_mode_from_name(std::string_view name);

/// Shortest round-trip decimal rendering of a double ("3", "2.75", ...).
std::string format_double(double v);
double parse_double(std::string_view text);

nlohmann::json spec_to_json(const SummarySpec& spec);
SummarySpec spec_from_json(const nlohmann::json& j);

/// Summary payload codec. from_json revalidates the kind's invariants and
/// throws ParseError on violation (tampered counts, bad probabilities, ...).
nlohmann::json summary_to_json(const Summary& s, NumericMode mode = NumericMode::decimal);
Summary summary_from_json(const nlohmann::json& j, NumericMode mode = NumericMode::decimal);

/// Canonical bytes for one summary: versioned envelope, sorted keys, no
/// whitespace. Equal summaries serialize to equal bytes.
std::string serialize(const Summary& s, NumericMode mode = NumericMode::decimal);
Summary deserialize(const std::string& bytes);

/// Canonical bytes for a schema summary (per-variable payloads).
std::string serialize(const SchemaSummary& s, NumericMode mode = NumericMode::decimal);
SchemaSummary deserialize_schema_summary(const std::string& bytes);

nlohmann::json report_to_json(const verify::MergeReport& report);
nlohmann::json witness_to_json(const verify::WitnessQuadruple& w, const verify::WitnessReport& r);

} // namespace msum::engine
