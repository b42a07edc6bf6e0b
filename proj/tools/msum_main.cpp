#include "msum/engine.hpp"
#include "msum/render.hpp"
#include "msum/verification.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace msum;

constexpr int kExitOk = 0;
constexpr int kExitError = 1; // operational error
constexpr int kExitVerification = 2; // merge-law violation / unexpected witness outcome

void write_output_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << bytes << '\n';
    if (!out) throw ParseError("write failed: " + path);
}

io::Format resolve_format(const std::string& flag, const std::filesystem::path& data) {
    if (flag == "csv") return io::Format::csv;
    if (flag == "jsonl") return io::Format::jsonl;
    return io::format_from_path(data);
}

// ---------------------------------------------------------------------------
// summarize
// ---------------------------------------------------------------------------

struct SummarizeOptions {
    std::string data, schema, format, output, provenance;
    std::string strategy = "round-robin";
    std::string by_column;
    std::string plan = "sequential";
    std::size_t partitions = 1;
    std::size_t workers = std::thread::hardware_concurrency();
    bool deterministic = false;
    bool hex_floats = false;
};

engine::SummaryFile run_summarize(const SummarizeOptions& opt) {
    io::DataSchema schema = io::load_schema(opt.schema);
    io::Dataset ds = io::load(opt.data, resolve_format(opt.format, opt.data), schema);

    io::SplitStrategy strategy;
    if (opt.strategy == "round-robin")
        strategy = io::SplitStrategy::round_robin(opt.partitions);
    else if (opt.strategy == "contiguous")
        strategy = io::SplitStrategy::contiguous(opt.partitions);
    else if (opt.strategy == "by-column")
        strategy = io::SplitStrategy::by_column(opt.by_column);
    else
        throw ParseError("unknown split strategy: " + opt.strategy);

    engine::ReductionPlan plan;
    if (opt.plan == "sequential")
        plan = engine::ReductionPlan::sequential();
    else if (opt.plan == "tree")
        plan = engine::ReductionPlan::balanced_tree(std::max<std::size_t>(1, opt.workers));
    else
        throw ParseError("unknown reduction plan: " + opt.plan);
    plan.deterministic = opt.deterministic;

    auto partitions = io::split(ds, strategy);
    auto result = engine::aggregate(partitions, schema.summary_schema(), plan);

    engine::SummaryFile file;
    file.schema = schema.summary_schema();
    file.summary = std::move(result.summary);
    file.mode = opt.hex_floats ? engine::NumericMode::hex : engine::NumericMode::decimal;
    std::string prefix =
        opt.provenance.empty() ? std::filesystem::path(opt.data).stem().string() : opt.provenance;
    for (const auto& pid : result.covered) file.provenance.insert(prefix + "/" + pid);
    return file;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string data, schema, format, output;
    std::size_t splits = 1000;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    bool inject_fault = false;
};

int run_verify(const VerifyOptions& opt) {
    io::DataSchema schema = io::load_schema(opt.schema);
    io::Dataset ds = io::load(opt.data, resolve_format(opt.format, opt.data), schema);

    // Test double: returns the left summary unchanged, which breaks the
    // merge law for every non-trivial split. Used to prove the harness
    // actually detects violations.
    verify::MergeFn merge_fn;
    if (opt.inject_fault) merge_fn = [](const Summary& a, const Summary&) { return a; };

    std::mt19937_64 rng(opt.seed);
    bool all_passed = true;
    nlohmann::json report_json = nlohmann::json::array();

    for (std::size_t v = 0; v < schema.variables.size(); ++v) {
        const auto& var = schema.variables[v];
        std::vector<Value> column;
        column.reserve(ds.records.size());
        for (const auto& rec : ds.records) column.push_back(rec.values[v]);

        std::size_t exact = 0, within = 0;
        std::optional<verify::MergeReport> first_violation;
        for (std::size_t trial = 0; trial < opt.splits; ++trial) {
            auto [a, b] = verify::random_split(column, rng);
            auto report = verify::oracle_check(var.summary, a, b, opt.tolerance, merge_fn);
            switch (report.outcome) {
            case verify::Outcome::exact_match: ++exact; break;
            case verify::Outcome::within_tolerance: ++within; break;
            case verify::Outcome::violation:
                if (!first_violation) first_violation = std::move(report);
                break;
            }
        }
        bool passed = !first_violation;
        all_passed = all_passed && passed;
        std::cout << (passed ? "PASS" : "FAIL") << "  " << var.name << "  ("
                  << kind_name(var.summary.kind()) << "): " << exact << " exact, " << within
                  << " within tolerance, " << (opt.splits - exact - within) << " violations\n";

        nlohmann::json vj;
        vj["variable"] = var.name;
        vj["kind"] = kind_name(var.summary.kind());
        vj["splits"] = opt.splits;
        vj["exact"] = exact;
        vj["within_tolerance"] = within;
        vj["violations"] = opt.splits - exact - within;
        if (first_violation) vj["first_violation"] = engine::report_to_json(*first_violation);
        report_json.push_back(std::move(vj));
    }

    if (!opt.output.empty()) write_output_file(opt.output, report_json.dump());
    return all_passed ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------
// witness
// ---------------------------------------------------------------------------

std::string stat_display_name(const std::string& id) {
    if (id == "median") return "med";
    if (id.rfind("kth:", 0) == 0) {
        std::string k = id.substr(4);
        if (k == "1") return "1st";
        if (k == "2") return "2nd";
        if (k == "3") return "3rd";
        return k + "th";
    }
    return id;
}

std::string render_list(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += engine::format_double(values[i]);
    }
    return out + "]";
}

std::string render_witness(const verify::WitnessQuadruple& w, const verify::WitnessReport& r) {
    const std::string stat = stat_display_name(w.statistic);
    auto union_of = [](const std::vector<double>& x, const std::vector<double>& y) {
        std::vector<double> u(x);
        u.insert(u.end(), y.begin(), y.end());
        return u;
    };

    struct Row {
        std::string lhs;
        std::string rhs;
    };
    std::vector<Row> rows = {
        {"v(A1) = " + render_list(w.a1), stat + "(A1) = " + engine::format_double(r.stat_a1)},
        {"v(B1) = " + render_list(w.b1), stat + "(B1) = " + engine::format_double(r.stat_b1)},
        {"v(A1 u B1) = " + render_list(union_of(w.a1, w.b1)),
         stat + "(A1 u B1) = " + engine::format_double(r.stat_union1)},
        {"v(A2) = " + render_list(w.a2), stat + "(A2) = " + engine::format_double(r.stat_a2)},
        {"v(B2) = " + render_list(w.b2), stat + "(B2) = " + engine::format_double(r.stat_b2)},
        {"v(A2 u B2) = " + render_list(union_of(w.a2, w.b2)),
         stat + "(A2 u B2) = " + engine::format_double(r.stat_union2)},
    };
    std::size_t width = 0;
    for (const auto& row : rows) width = std::max(width, row.lhs.size());

    std::string out;
    for (const auto& row : rows) {
        out += row.lhs;
        out.append(width + 3 - row.lhs.size(), ' ');
        out += row.rhs;
        out += '\n';
    }
    out += r.valid() ? "witness: valid -- " + w.statistic + " is not exactly mergeable\n"
                     : "witness: invalid\n";
    return out;
}

struct WitnessOptions {
    std::string stat;
    std::string universe = "1..9";
    std::string output;
    std::string expect;
    std::size_t max_size = 3;
    int paper_example = 0;
};

std::vector<double> parse_universe(const std::string& text) {
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        double lo = engine::parse_double(text.substr(0, dots));
        double hi = engine::parse_double(text.substr(dots + 2));
        if (hi < lo) throw ParseError("universe range is empty: " + text);
        std::vector<double> out;
        for (double v = lo; v <= hi; v += 1.0) out.push_back(v);
        return out;
    }
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(engine::parse_double(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

int run_witness(const WitnessOptions& opt) {
    if (opt.paper_example != 0) {
        verify::WitnessQuadruple w = opt.paper_example == 1
                                         ? verify::median_counterexample()
                                         : verify::second_smallest_counterexample();
        auto report = verify::check_witness(w);
        std::cout << "paper example " << opt.paper_example << " (" << w.statistic << ")\n"
                  << render_witness(w, report);
        if (!opt.output.empty())
            write_output_file(opt.output, engine::witness_to_json(w, report).dump());
        return report.valid() ? kExitOk : kExitVerification;
    }

    if (opt.stat.empty()) throw ParseError("witness needs --stat or --paper-example");
    verify::Statistic stat = verify::Statistic::by_id(opt.stat);
    auto universe = parse_universe(opt.universe);
    auto found =
        verify::search_witness(stat, universe, static_cast<std::uint32_t>(opt.max_size));

    if (found) {
        auto report = verify::check_witness(*found);
        std::cout << render_witness(*found, report);
        if (!opt.output.empty())
            write_output_file(opt.output, engine::witness_to_json(*found, report).dump());
        if (opt.expect == "none") return kExitVerification;
    } else {
        std::cout << "none found: no witness quadruple for " << stat.id() << " over "
                  << render_list(universe) << " with sets of up to " << opt.max_size
                  << " values\n";
        if (!opt.output.empty()) write_output_file(opt.output, "null");
        if (opt.expect == "found") return kExitVerification;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exactly mergeable summaries: summarize, merge, verify, witness"};
    app.require_subcommand(1);

    SummarizeOptions sum_opt;
    auto* cmd_sum = app.add_subcommand("summarize", "summarize a dataset into a summary file");
    cmd_sum->add_option("--data", sum_opt.data, "csv or jsonl data file")->required();
    cmd_sum->add_option("--schema", sum_opt.schema, "schema JSON file")->required();
    cmd_sum->add_option("--format", sum_opt.format, "csv|jsonl (default: by extension)");
    cmd_sum->add_option("--partitions", sum_opt.partitions, "number of partitions");
    cmd_sum->add_option("--strategy", sum_opt.strategy, "round-robin|contiguous|by-column");
    cmd_sum->add_option("--by", sum_opt.by_column, "column for by-column splits");
    cmd_sum->add_option("--plan", sum_opt.plan, "sequential|tree");
    cmd_sum->add_option("--workers", sum_opt.workers, "tree plan worker count");
    cmd_sum->add_flag("--deterministic", sum_opt.deterministic,
                      "sequential fold in partition-id order");
    cmd_sum->add_option("--output", sum_opt.output, "summary file to write");
    cmd_sum->add_option("--provenance", sum_opt.provenance,
                        "provenance prefix (default: data file stem)");
    cmd_sum->add_flag("--hex-floats", sum_opt.hex_floats, "fixed-width hex numeric encoding");

    std::vector<std::string> merge_inputs;
    std::string merge_output;
    auto* cmd_merge = app.add_subcommand("merge", "merge summary files with disjoint provenance");
    cmd_merge->add_option("files", merge_inputs, "summary files")->required()->expected(-1);
    cmd_merge->add_option("--output", merge_output, "merged summary file to write");

    VerifyOptions verify_opt;
    auto* cmd_verify =
        app.add_subcommand("verify", "check the merge law on randomized splits of a dataset");
    cmd_verify->add_option("--data", verify_opt.data, "csv or jsonl data file")->required();
    cmd_verify->add_option("--schema", verify_opt.schema, "schema JSON file")->required();
    cmd_verify->add_option("--format", verify_opt.format, "csv|jsonl (default: by extension)");
    cmd_verify->add_option("--splits", verify_opt.splits, "number of random splits");
    cmd_verify->add_option("--seed", verify_opt.seed, "random seed");
    cmd_verify->add_option("--tolerance", verify_opt.tolerance,
                           "relative tolerance for floating kinds");
    cmd_verify->add_option("--output", verify_opt.output, "JSON report file");
    cmd_verify
        ->add_flag("--inject-fault", verify_opt.inject_fault,
                   "replace merge with a broken one (harness self-test)")
        ->group(""); // hidden

    WitnessOptions wit_opt;
    auto* cmd_wit =
        app.add_subcommand("witness", "search for a non-mergeability witness quadruple");
    cmd_wit->add_option("--stat", wit_opt.stat, "median|kth:K|count|sum|min|max|mean");
    cmd_wit->add_option("--universe", wit_opt.universe, "value range a..b or list v1,v2,...");
    cmd_wit->add_option("--max-size", wit_opt.max_size, "max values per set (<= 4)");
    cmd_wit->add_option("--expect", wit_opt.expect, "found|none: exit 2 on mismatch")
        ->check(CLI::IsMember({"found", "none"}));
    cmd_wit->add_option("--paper-example", wit_opt.paper_example,
                        "print and check worked example 1 or 2")
        ->check(CLI::Range(1, 2));
    cmd_wit->add_option("--output", wit_opt.output, "JSON witness file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_sum->parsed()) {
            engine::SummaryFile file = run_summarize(sum_opt);
            std::cout << to_table(file.summary);
            if (!sum_opt.output.empty())
                write_output_file(sum_opt.output, engine::summary_file_to_bytes(file));
            return kExitOk;
        }
        if (cmd_merge->parsed()) {
            std::vector<std::filesystem::path> paths(merge_inputs.begin(), merge_inputs.end());
            engine::SummaryFile merged = engine::merge_files(paths);
            std::cout << to_table(merged.summary);
            if (!merge_output.empty())
                write_output_file(merge_output, engine::summary_file_to_bytes(merged));
            return kExitOk;
        }
        if (cmd_verify->parsed()) return run_verify(verify_opt);
        if (cmd_wit->parsed()) return run_witness(wit_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
