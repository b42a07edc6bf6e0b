#include "msum/engine.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>
#include <unordered_set>

using nlohmann::json;

namespace msum::engine {

namespace {

void check_disjoint_ids(std::span<const io::Partition> partitions) {
    std::unordered_set<std::string_view> seen;
    for (const auto& part : partitions)
        for (const auto& rec : part.records)
            if (!seen.insert(rec.id).second)
                throw MergeError("partitions overlap: duplicate unit id " + rec.id +
                                 " (partition " + part.id + ")");
}

std::vector<SchemaSummary> summarize_partitions(std::span<const io::Partition> partitions,
                                                const Schema& schema, std::size_t workers) {
    std::vector<SchemaSummary> out(partitions.size());
    if (workers <= 1 || partitions.size() <= 1) {
        for (std::size_t i = 0; i < partitions.size(); ++i)
            out[i] = summarize_records(schema, partitions[i].records);
        return out;
    }

    // Partition summaries are independent; workers pull indices off a
    // shared counter. First exception wins, the rest are dropped.
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= partitions.size() || failed.load()) return;
            try {
                out[i] = summarize_records(schema, partitions[i].records);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    std::size_t thread_count = std::min(workers, partitions.size());
    threads.reserve(thread_count);
    for (std::size_t t = 0; t < thread_count; ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
    if (failed.load()) std::rethrow_exception(error);
    return out;
}

SchemaSummary reduce_tree(std::vector<SchemaSummary> level) {
    while (level.size() > 1) {
        std::vector<SchemaSummary> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(merge_schema(level[i], level[i + 1]));
        if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    return std::move(level.front());
}

} // namespace

AggregateResult aggregate(std::span<const io::Partition> partitions, const Schema& schema,
                          const ReductionPlan& plan) {
    if (partitions.empty()) throw SpecError("aggregate needs at least one partition");
    check_disjoint_ids(partitions);

    std::vector<io::Partition> ordered;
    std::span<const io::Partition> work = partitions;
    if (plan.deterministic) {
        ordered.assign(partitions.begin(), partitions.end());
        std::sort(ordered.begin(), ordered.end(),
                  [](const io::Partition& a, const io::Partition& b) { return a.id < b.id; });
        work = ordered;
    }

    bool sequential = plan.deterministic || plan.mode == ReductionPlan::Mode::sequential;
    auto parts = summarize_partitions(work, schema, sequential ? 1 : plan.workers);

    AggregateResult result;
    if (sequential) {
        result.summary = std::move(parts.front());
        for (std::size_t i = 1; i < parts.size(); ++i)
            result.summary = merge_schema(result.summary, parts[i]);
    } else {
        result.summary = reduce_tree(std::move(parts));
    }
    result.covered.reserve(work.size());
    for (const auto& p : work) result.covered.push_back(p.id);
    std::sort(result.covered.begin(), result.covered.end());
    return result;
}

// ---------------------------------------------------------------------------
// Summary files
// ---------------------------------------------------------------------------

std::string summary_file_to_bytes(const SummaryFile& f) {
    if (f.schema.size() != f.summary.parts.size())
        throw SpecError("summary file schema does not match its payloads");
    json vars = json::array();
    for (std::size_t i = 0; i < f.schema.size(); ++i) {
        if (f.schema[i].name != f.summary.parts[i].first)
            throw SpecError("summary file schema does not match its payloads");
        json v;
        v["name"] = f.schema[i].name;
        v["spec"] = spec_to_json(f.schema[i].spec);
        v["summary"] = summary_to_json(f.summary.parts[i].second, f.mode);
        vars.push_back(std::move(v));
    }
    json j;
    j["format_version"] = 1;
    j["floats"] = numeric_mode_name(f.mode);
    j["provenance"] = f.provenance; // std::set: sorted
    j["variables"] = std::move(vars);
    return j.dump();
}

SummaryFile summary_file_from_bytes(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed summary file: ") + e.what());
    }
    if (!j.is_object() || j.value("format_version", -1) != 1)
        throw ParseError("unsupported summary file format version");
    SummaryFile f;
    f.mode = numeric_mode_from_name(j.value("floats", "decimal"));
    if (j.contains("provenance"))
        for (const json& p : j.at("provenance")) f.provenance.insert(p.get<std::string>());
    if (!j.contains("variables") || !j.at("variables").is_array())
        throw ParseError("summary file needs a variables array");
    for (const json& v : j.at("variables")) {
        if (!v.contains("name") || !v.at("name").is_string())
            throw ParseError("summary file variable needs a name");
        std::string name = v.at("name").get<std::string>();
        SummarySpec spec = spec_from_json(v.at("spec"));
        Summary summary = summary_from_json(v.at("summary"), f.mode);
        if (!compatible(summary, spec.empty_summary()))
            throw ParseError("variable " + name + ": payload does not match its spec echo");
        f.schema.push_back({name, std::move(spec)});
        f.summary.parts.emplace_back(std::move(name), std::move(summary));
    }
    return f;
}

void save_summary_file(const SummaryFile& f, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path.string());
    out << summary_file_to_bytes(f) << '\n';
    if (!out) throw ParseError("write failed: " + path.string());
}

SummaryFile load_summary_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return summary_file_from_bytes(bytes);
}

SummaryFile merge_files(std::span<const SummaryFile> files) {
    if (files.empty()) throw MergeError("merge_files needs at least one file");
    SummaryFile acc = files[0];
    for (std::size_t i = 1; i < files.size(); ++i) {
        const SummaryFile& f = files[i];
        if (f.schema.size() != acc.schema.size())
            throw MergeError("summary files disagree on their schema");
        for (std::size_t v = 0; v < f.schema.size(); ++v)
            if (f.schema[v].name != acc.schema[v].name || !(f.schema[v].spec == acc.schema[v].spec))
                throw MergeError("summary files disagree on variable " + acc.schema[v].name);
        for (const auto& p : f.provenance)
            if (acc.provenance.contains(p))
                throw MergeError("overlapping provenance: partition " + p +
                                 " is covered by more than one file");
        acc.summary = merge_schema(acc.summary, f.summary);
        acc.provenance.insert(f.provenance.begin(), f.provenance.end());
    }
    return acc;
}

SummaryFile merge_files(const std::vector<std::filesystem::path>& paths) {
    std::vector<SummaryFile> files;
    files.reserve(paths.size());
    for (const auto& p : paths) files.push_back(load_summary_file(p));
    return merge_files(files);
}

} // namespace msum::engine
