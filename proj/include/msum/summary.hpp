#pragma once

#include "msum/error.hpp"
#include "msum/value.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace msum {

enum class Kind {
    count,
    minimum,
    maximum,
    sum,
    extreme_k,
    mean,
    moments,
    membership,
    bar_chart,
    histogram,
    distribution,
    composed,
};

/// Stable textual tag for a kind; also used in serialized payloads.
std::string_view kind_name(Kind k);
Kind kind_from_name(std::string_view name);

// ---------------------------------------------------------------------------
// Summary payloads. Each carries its own parameters, so two summaries can be
// checked for merge compatibility from their payloads alone.
// ---------------------------------------------------------------------------

/// |A|.
struct CountSummary {
    std::uint64_t n = 0;

    friend bool operator==(const CountSummary&, const CountSummary&) = default;
};

enum class Extremum { minimum, maximum };

/// min/max over A; empty optional is the summary of the empty set.
struct ExtremumSummary {
    Extremum side = Extremum::minimum;
    std::optional<double> value;

    friend bool operator==(const ExtremumSummary&, const ExtremumSummary&) = default;
};

struct SumSummary {
    double total = 0.0;

    friend bool operator==(const SumSummary&, const SumSummary&) = default;
};

enum class ExtremeOrder { smallest_first, largest_first };

/// The k most extreme values of A, kept sorted by `order`.
/// Multiset semantics: duplicates are preserved, |values| = min(k, n_A).
struct ExtremeK {
    std::uint32_t k = 1;
    ExtremeOrder order = ExtremeOrder::smallest_first;
    std::vector<double> values;

    friend bool operator==(const ExtremeK&, const ExtremeK&) = default;
};

/// (n, mean); mean is meaningless when n = 0.
struct MeanSummary {
    std::uint64_t n = 0;
    double mean = 0.0;

    friend bool operator==(const MeanSummary&, const MeanSummary&) = default;
};

/// (n, S_1..S_p) with S_k = sum of v^k over A. Power sums add under disjoint
/// union, which makes every moment up to order p exactly mergeable.
struct MomentSummary {
    std::uint64_t n = 0;
    std::vector<double> power_sums; // size = order p >= 2

    std::uint32_t order() const { return static_cast<std::uint32_t>(power_sums.size()); }

    friend bool operator==(const MomentSummary&, const MomentSummary&) = default;
};

/// Half-open numeric range [lo, hi).
struct NumericRange {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const NumericRange&, const NumericRange&) = default;
};

struct LabelSet {
    std::vector<std::string> labels; // sorted, unique

    friend bool operator==(const LabelSet&, const LabelSet&) = default;
};

/// A named reference set C, realized as a predicate on values.
struct ReferenceSet {
    std::string id;
    std::variant<NumericRange, LabelSet> predicate;

    bool contains(const Value& v) const;

    friend bool operator==(const ReferenceSet&, const ReferenceSet&) = default;
};

/// n(A;C) = |A ∩ C| for a fixed reference set C.
struct MembershipCount {
    ReferenceSet reference;
    std::uint64_t count = 0;

    friend bool operator==(const MembershipCount&, const MembershipCount&) = default;
};

/// Per-category counts over a declared finite category set K.
/// Every category of K has an entry (zero-filled), so the size is fixed.
struct BarChart {
    std::vector<std::string> categories; // declared order
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t n = 0;

    friend bool operator==(const BarChart&, const BarChart&) = default;
};

/// Per-bin counts over declared edges; bins are [e_i, e_{i+1}) with the last
/// bin closed. Values outside the edge range land in underflow/overflow.
struct Histogram {
    std::vector<double> edges; // strictly increasing, size >= 2
    std::vector<std::uint64_t> counts; // size = edges.size() - 1
    std::uint64_t underflow = 0;
    std::uint64_t overflow = 0;
    std::uint64_t n = 0; // underflow + overflow + sum(counts)

    friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// (n, p): set size plus a probability vector over a fixed ordered support.
/// n = 0 is the empty summary (p all zero).
struct DiscreteDistribution {
    std::uint64_t n = 0;
    std::vector<double> p;
    std::vector<std::string> support; // slot names, same size as p

    friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;
};

class Summary;

/// Tuple of heterogeneous summaries over the same unit set.
struct ComposedSummary {
    std::vector<Summary> parts;

    friend bool operator==(const ComposedSummary&, const ComposedSummary&);
};

/// Value-semantic tagged union over all summary kinds.
class Summary {
public:
    using Payload = std::variant<CountSummary, ExtremumSummary, SumSummary, ExtremeK,
                                 MeanSummary, MomentSummary, MembershipCount, BarChart,
                                 Histogram, DiscreteDistribution, ComposedSummary>;

    Summary(CountSummary s) : payload_(std::move(s)) {}
    Summary(ExtremumSummary s) : payload_(std::move(s)) {}
    Summary(SumSummary s) : payload_(std::move(s)) {}
    Summary(ExtremeK s) : payload_(std::move(s)) {}
    Summary(MeanSummary s) : payload_(std::move(s)) {}
    Summary(MomentSummary s) : payload_(std::move(s)) {}
    Summary(MembershipCount s) : payload_(std::move(s)) {}
    Summary(BarChart s) : payload_(std::move(s)) {}
    Summary(Histogram s) : payload_(std::move(s)) {}
    Summary(DiscreteDistribution s) : payload_(std::move(s)) {}
    Summary(ComposedSummary s) : payload_(std::move(s)) {}

    Kind kind() const;

    template <typename T>
    const T& as() const {
        const T* p = std::get_if<T>(&payload_);
        if (!p) throw SpecError("summary does not hold the requested kind");
        return *p;
    }

    template <typename T>
    const T* get_if() const {
        return std::get_if<T>(&payload_);
    }

    const Payload& payload() const { return payload_; }

    friend bool operator==(const Summary&, const Summary&);

private:
    Payload payload_;
};

/// True iff a and b have the same kind and identical parameters, i.e. merging
/// them is defined. Ignores the data fields.
bool compatible(const Summary& a, const Summary& b);

} // namespace msum
