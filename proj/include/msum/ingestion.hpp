#pragma once

#include "msum/combinators.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace msum::io {

enum class VarType { numeric, categorical, binned };

/// Declares one dataset variable: its measurement type and the summary to
/// compute over it. Categorical variables declare their full label set,
/// binned ones their edges.
struct VariableSpec {
    std::string name;
    VarType type = VarType::numeric;
    std::vector<std::string> categories; // categorical
    std::vector<double> edges; // binned
    SummarySpec summary = SummarySpec::count();
};

struct DataSchema {
    std::optional<std::string> id_column;
    std::vector<VariableSpec> variables;

    /// The per-variable summary schema (combinators view).
    Schema summary_schema() const;
};

struct Dataset {
    DataSchema schema;
    std::vector<Record> records;
};

/// A disjoint block of units. Partition ids are stable and feed provenance.
struct Partition {
    std::string id;
    std::vector<Record> records;
};

enum class Format { csv, jsonl };

/// Parses a schema JSON document (fields mirroring VariableSpec).
DataSchema parse_schema(const std::string& json_text);
DataSchema load_schema(const std::filesystem::path& path);

/// Loads and validates unit records. Unit ids come from the declared id
/// column, else the 1-based row index. Duplicate ids, unknown categories,
/// non-finite numerics and missing fields are errors with row locations.
Dataset load(const std::filesystem::path& path, Format format, const DataSchema& schema);

/// Guesses csv/jsonl from the file extension.
Format format_from_path(const std::filesystem::path& path);

struct SplitStrategy {
    enum class Mode { round_robin, contiguous, by_column };
    Mode mode = Mode::round_robin;
    std::size_t parts = 1; // round_robin / contiguous
    std::string column; // by_column

    static SplitStrategy round_robin(std::size_t k) { return {Mode::round_robin, k, {}}; }
    static SplitStrategy contiguous(std::size_t k) { return {Mode::contiguous, k, {}}; }
    static SplitStrategy by_column(std::string name) { return {Mode::by_column, 0, std::move(name)}; }
};

/// Splits a dataset into disjoint covering partitions, deterministically.
std::vector<Partition> split(const Dataset& ds, const SplitStrategy& strategy);

} // namespace msum::io
