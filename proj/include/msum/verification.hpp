#pragma once

#include "msum/core.hpp"

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace msum::verify {

/// Outcome of comparing a merged summary against the oracle recomputation.
enum class Outcome { exact_match, within_tolerance, violation };

struct MergeReport {
    std::string kind;
    Outcome outcome = Outcome::exact_match;
    double max_rel_error = 0.0;
    std::string detail; // populated on violation
    std::vector<Value> a_values, b_values; // inputs echoed
    std::optional<Summary> merged;
    std::optional<Summary> recomputed;

    bool passed() const { return outcome != Outcome::violation; }
};

/// Maximum relative discrepancy between two compatible summaries, component
/// by component: 0 for identical, +inf for structural differences. Exact
/// (integer/order-based) fields must match exactly or the result is +inf.
double max_rel_error(const Summary& a, const Summary& b);

using MergeFn = std::function<Summary(const Summary&, const Summary&)>;

/// Checks the merge law on one (A, B) split: compares
/// merge(summarize(A), summarize(B)) against the oracle summarize(A ++ B).
/// Exact kinds must match bit-exactly; floating kinds are classified against
/// `tolerance` (relative). A custom merge function can be injected so the
/// harness can prove it detects broken merges.
MergeReport oracle_check(const SummarySpec& spec, std::span<const Value> a_values,
                         std::span<const Value> b_values, double tolerance = 1e-9,
                         const MergeFn& merge_fn = {});

/// Splits values into two disjoint parts by a fair per-element coin flip.
std::pair<std::vector<Value>, std::vector<Value>> random_split(std::span<const Value> values,
                                                               std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Witness quadruples: the proof schema for non-mergeability. A statistic
// with sets A1, B1, A2, B2 such that the part statistics agree pairwise but
// the union statistics differ cannot be exactly mergeable.
// ---------------------------------------------------------------------------

/// Named pure function from a value list to one or more reals. Statistics
/// realized from the exactly mergeable summaries return that summary's full
/// state — "mean" is the pair (n, mean), since the scalar mean alone is not
/// mergeable and does admit witnesses.
class Statistic {
public:
    using Result = std::vector<double>;

    static Statistic median(); // ascending sort, 1-based index ceil(n/2)
    static Statistic kth_smallest(std::uint32_t k);
    static Statistic count();
    static Statistic sum();
    static Statistic min();
    static Statistic max();
    static Statistic mean(); // (n, mean)
    static Statistic custom(std::string id, std::function<Result(std::span<const double>)> fn);
    /// Parses "median", "kth:K", "count", "sum", "min", "max", "mean".
    static Statistic by_id(const std::string& id);

    const std::string& id() const { return id_; }

    /// Throws SpecError when the statistic is undefined on the list
    /// (empty list, or fewer than k values for kth-smallest).
    Result operator()(std::span<const double> values) const { return fn_(values); }

private:
    Statistic(std::string id, std::function<Result(std::span<const double>)> fn)
        : id_(std::move(id)), fn_(std::move(fn)) {}

    std::string id_;
    std::function<Result(std::span<const double>)> fn_;
};

struct WitnessQuadruple {
    std::vector<double> a1, b1, a2, b2;
    std::string statistic;

    friend bool operator==(const WitnessQuadruple&, const WitnessQuadruple&) = default;
};

struct WitnessReport {
    Statistic::Result stat_a1, stat_b1, stat_a2, stat_b2;
    Statistic::Result stat_union1, stat_union2;
    bool a_stats_equal = false;
    bool b_stats_equal = false;
    bool unions_differ = false;

    /// True iff the quadruple proves non-mergeability.
    bool valid() const { return a_stats_equal && b_stats_equal && unions_differ; }
};

/// Evaluates the three witness conditions. Throws on a malformed quadruple
/// (empty component list, unknown statistic, statistic undefined on a part).
WitnessReport check_witness(const WitnessQuadruple& w);

/// Bounded exhaustive search for a witness quadruple over sub-multisets of
/// `universe` with 1..max_size elements. Enumeration is lexicographic and
/// deterministic. Requires |universe| <= 12 and max_size <= 4. Returns the
/// first witness found, or nullopt after exhausting the space.
std::optional<WitnessQuadruple> search_witness(const Statistic& stat,
                                               std::span<const double> universe,
                                               std::uint32_t max_size);

/// The paper's two worked non-mergeability examples.
WitnessQuadruple median_counterexample(); // med: [3,4,1],[9,6] vs [3,8],[6,2,7]
WitnessQuadruple second_smallest_counterexample(); // 2nd: [1,3,5],[2,5,6] vs [3,3,6],[4,5,7]

/// True iff the two unit-id sets are disjoint: the merge precondition the
/// summaries themselves cannot express.
bool disjointness_guard(std::span<const std::string> a_ids, std::span<const std::string> b_ids);

} // namespace msum::verify
