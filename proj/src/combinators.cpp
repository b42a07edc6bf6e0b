#include "msum/combinators.hpp"

namespace msum {

SummarySpec compose(std::vector<SummarySpec> parts) {
    return SummarySpec::composed(std::move(parts));
}

Summary interval(std::span<const Value> values) {
    return summarize(SummarySpec::interval(), values);
}

SchemaSummary summarize_records(const Schema& schema, std::span<const Record> records) {
    // Column-wise pass: gather each variable's values, then summarize.
    SchemaSummary out;
    out.parts.reserve(schema.size());
    for (std::size_t col = 0; col < schema.size(); ++col) {
        std::vector<Value> column;
        column.reserve(records.size());
        for (const Record& r : records) {
            if (r.values.size() != schema.size())
                throw SpecError("record " + r.id + " is missing a value for variable " +
                                schema[col].name);
            column.push_back(r.values[col]);
        }
        out.parts.emplace_back(schema[col].name, summarize(schema[col].spec, column));
    }
    return out;
}

SchemaSummary merge_schema(const SchemaSummary& a, const SchemaSummary& b) {
    if (a.parts.size() != b.parts.size())
        throw MergeError("schema summaries have different variable counts");
    SchemaSummary out;
    out.parts.reserve(a.parts.size());
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
        if (a.parts[i].first != b.parts[i].first)
            throw MergeError("schema variable mismatch: " + a.parts[i].first + " vs " +
                             b.parts[i].first);
        out.parts.emplace_back(a.parts[i].first, merge(a.parts[i].second, b.parts[i].second));
    }
    return out;
}

} // namespace msum
