#pragma once

#include "msum/core.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace msum {

/// N-ary composition: summarize applies each part to the same values, merge
/// is component-wise. Equivalent to folding the binary ⊕ of part specs.
SummarySpec compose(std::vector<SummarySpec> parts);

/// Interval summary of a value sequence: composed (min, max).
Summary interval(std::span<const Value> values);

/// One summary spec per named variable of a record schema.
struct SchemaField {
    std::string name;
    SummarySpec spec;
};

using Schema = std::vector<SchemaField>;

/// A record: stable unit id plus one value per schema variable, in schema
/// order.
struct Record {
    std::string id;
    std::vector<Value> values;
};

/// Per-variable summaries over one unit set, in schema order.
struct SchemaSummary {
    std::vector<std::pair<std::string, Summary>> parts;

    friend bool operator==(const SchemaSummary&, const SchemaSummary&) = default;
};

/// Summarizes every schema variable over the same records. A record with a
/// missing value (wrong arity) is an error; there is no missing-data
/// handling.
SchemaSummary summarize_records(const Schema& schema, std::span<const Record> records);

/// Per-variable merge. Variable names must match pairwise.
SchemaSummary merge_schema(const SchemaSummary& a, const SchemaSummary& b);

} // namespace msum
