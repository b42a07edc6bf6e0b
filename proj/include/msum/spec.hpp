#pragma once

#include "msum/summary.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace msum {

/// Declarative description of a summary kind and its parameters. A spec both
/// validates raw values and fixes the merge-compatibility parameters (k,
/// order, bin edges, category set, moment order, reference set).
class SummarySpec {
public:
    static SummarySpec count();
    static SummarySpec minimum();
    static SummarySpec maximum();
    static SummarySpec sum();
    static SummarySpec extreme_k(std::uint32_t k, ExtremeOrder order);
    static SummarySpec mean();
    static SummarySpec moments(std::uint32_t order); // order >= 2
    static SummarySpec membership(ReferenceSet reference);
    static SummarySpec bar_chart(std::vector<std::string> categories);
    static SummarySpec histogram(std::vector<double> edges);
    static SummarySpec distribution_over(std::vector<std::string> categories);
    static SummarySpec distribution_binned(std::vector<double> edges);
    static SummarySpec composed(std::vector<SummarySpec> parts);
    /// Interval summary [min, max], realized as composed(minimum, maximum).
    static SummarySpec interval();

    Kind kind() const { return kind_; }

    std::uint32_t k() const { return k_; }
    ExtremeOrder order() const { return order_; }
    std::uint32_t moment_order() const { return moment_order_; }
    const ReferenceSet& reference() const { return reference_; }
    const std::vector<std::string>& categories() const { return categories_; }
    const std::vector<double>& edges() const { return edges_; }
    const std::vector<SummarySpec>& parts() const { return parts_; }

    /// The summary of the empty set: the two-sided identity for merge.
    Summary empty_summary() const;

    /// True if this spec (or, for compositions, any part) carries
    /// floating-point data fields; such kinds merge exactly only in exact
    /// arithmetic and get a tolerance class in verification.
    bool floating() const;

    friend bool operator==(const SummarySpec&, const SummarySpec&) = default;

private:
    SummarySpec() = default;

    Kind kind_ = Kind::count;
    std::uint32_t k_ = 0;
    ExtremeOrder order_ = ExtremeOrder::smallest_first;
    std::uint32_t moment_order_ = 0;
    ReferenceSet reference_;
    std::vector<std::string> categories_;
    std::vector<double> edges_;
    std::vector<SummarySpec> parts_;
};

/// Distribution support slot names for a binned support: underflow slot,
/// one "[a,b)" slot per bin (last closed "[a,b]"), overflow slot.
std::vector<std::string> binned_support_names(const std::vector<double>& edges);

} // namespace msum
