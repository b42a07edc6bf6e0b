#pragma once

#include "msum/ingestion.hpp"
#include "msum/serialization.hpp"

#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace msum::engine {

/// How per-partition summaries are reduced. Both modes produce bit-identical
/// results for exact kinds; floating kinds may differ across plans within
/// relative 1e-9 on desk-scale data. Deterministic mode forces a sequential
/// left fold in partition-id order so floating results are reproducible.
struct ReductionPlan {
    enum class Mode { sequential, balanced_tree };
    Mode mode = Mode::sequential;
    std::size_t workers = 1; // balanced_tree summarize concurrency
    bool deterministic = false;

    static ReductionPlan sequential() { return {Mode::sequential, 1, false}; }
    static ReductionPlan balanced_tree(std::size_t workers) {
        return {Mode::balanced_tree, workers, false};
    }
};

struct AggregateResult {
    SchemaSummary summary;
    std::vector<std::string> covered; // partition ids, sorted
};

/// Per-partition summarize followed by merge reduction. Equals
/// summarize_records over the concatenated dataset, exactly for exact kinds
/// and within relative 1e-9 for floating kinds. Partitions must be disjoint
/// (unit ids are checked).
AggregateResult aggregate(std::span<const io::Partition> partitions, const Schema& schema,
                          const ReductionPlan& plan = {});

/// A persisted schema summary: format version, spec echo, payloads, and the
/// partition ids covered (provenance).
struct SummaryFile {
    Schema schema;
    SchemaSummary summary;
    std::set<std::string> provenance;
    NumericMode mode = NumericMode::decimal;
};

std::string summary_file_to_bytes(const SummaryFile& f);
SummaryFile summary_file_from_bytes(const std::string& bytes);

void save_summary_file(const SummaryFile& f, const std::filesystem::path& path);
SummaryFile load_summary_file(const std::filesystem::path& path);

/// Merges summary files that share a spec and have pairwise-disjoint
/// provenance. Overlapping provenance is a hard error: it is how the merge
/// precondition (disjoint unit sets) is enforced across process boundaries.
SummaryFile merge_files(std::span<const SummaryFile> files);
SummaryFile merge_files(const std::vector<std::filesystem::path>& paths);

} // namespace msum::engine
