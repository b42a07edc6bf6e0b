#pragma once

#include "msum/spec.hpp"
#include "msum/summary.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace msum {

/// Computes the summary of `values` directly from the kind's definition.
/// Empty input yields the kind's empty summary. The caller is responsible
/// for `values` matching the spec's variable type.
Summary summarize(const SummarySpec& spec, std::span<const Value> values);

/// F(Σ(A), Σ(B)) for disjoint A and B. Disjointness of the underlying unit
/// sets cannot be checked from the summaries and is a caller obligation;
/// the verification module tracks unit ids where enforcement is needed.
/// Throws MergeError on kind or parameter mismatch.
Summary merge(const Summary& a, const Summary& b);

/// Left fold of merge over a non-empty sequence.
Summary merge_all(std::span<const Summary> items);

struct MeanView {
    std::uint64_t n = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

/// (n, μ, σ) view of a moment summary: μ = S1/n, σ = sqrt(max(0, S2/n - μ²)).
/// The variance is clamped at zero to absorb rounding on near-degenerate
/// data. Requires n >= 1.
MeanView mean_view(const MomentSummary& m);

/// Inverse of mean_view for order 2: recovers power sums from (n, μ, σ)
/// via S2 = n(σ² + μ²).
MomentSummary moments_from_stats(std::uint64_t n, double mean, double stddev);

/// r-th central moment (1/n)Σ(v - μ)^r from power sums via binomial
/// expansion. Requires n >= 1 and 2 <= r <= order.
double central_moment(const MomentSummary& m, std::uint32_t r);

/// Normalized (n, p) view of a histogram or bar chart. Requires n >= 1.
/// Histogram supports include explicit underflow/overflow slots so the
/// frequencies always sum to n.
DiscreteDistribution to_distribution(const Summary& s);

/// Frequency vector f with f_i = round(n·p_i). Errors if any implied
/// frequency is farther than 1e-9 from an integer or the total is not n.
std::vector<std::uint64_t> from_distribution(const DiscreteDistribution& d);

/// Builds a distribution over an anonymous indexed support ("0", "1", ...).
DiscreteDistribution make_distribution(std::uint64_t n, std::vector<double> p);

/// Builds a distribution directly from a frequency vector.
DiscreteDistribution distribution_from_frequencies(const std::vector<std::uint64_t>& f,
                                                   std::vector<std::string> support = {});

/// [m, M] view of an interval summary (a composed (min, max) pair).
/// Empty optional when the summary covers no units.
std::optional<std::pair<double, double>> interval_bounds(const Summary& s);

} // namespace msum
