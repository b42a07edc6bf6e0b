#include "msum/summary.hpp"

#include <algorithm>

namespace msum {

std::string_view kind_name(Kind k) {
    switch (k) {
    case Kind::count: return "count";
    case Kind::minimum: return "min";
    case Kind::maximum: return "max";
    case Kind::sum: return "sum";
    case Kind::extreme_k: return "extreme-k";
    case Kind::mean: return "mean";
    case Kind::moments: return "moments";
    case Kind::membership: return "membership";
    case Kind::bar_chart: return "bar-chart";
    case Kind::histogram: return "histogram";
    case Kind::distribution: return "distribution";
    case Kind::composed: return "composed";
    }
    throw SpecError("unknown summary kind");
}

Kind kind_from_name(std::string_view name) {
    static const std::pair<std::string_view, Kind> table[] = {
        {"count", Kind::count},       {"min", Kind::minimum},
        {"max", Kind::maximum},       {"sum", Kind::sum},
        {"extreme-k", Kind::extreme_k}, {"mean", Kind::mean},
        {"moments", Kind::moments},   {"membership", Kind::membership},
        {"bar-chart", Kind::bar_chart}, {"histogram", Kind::histogram},
        {"distribution", Kind::distribution}, {"composed", Kind::composed},
    };
    for (const auto& [n, k] : table)
        if (n == name) return k;
    throw ParseError("unknown summary kind: " + std::string(name));
}

bool ReferenceSet::contains(const Value& v) const {
    if (const auto* range = std::get_if<NumericRange>(&predicate))
        return v.is_number() && v.number() >= range->lo && v.number() < range->hi;
    const auto& labels = std::get<LabelSet>(predicate).labels;
    return v.is_label() && std::binary_search(labels.begin(), labels.end(), v.label());
}

bool operator==(const ComposedSummary& a, const ComposedSummary& b) {
    return a.parts == b.parts;
}

Kind Summary::kind() const {
    struct Visitor {
        Kind operator()(const CountSummary&) const { return Kind::count; }
        Kind operator()(const ExtremumSummary& s) const {
            return s.side == Extremum::minimum ? Kind::minimum : Kind::maximum;
        }
        Kind operator()(const SumSummary&) const { return Kind::sum; }
        Kind operator()(const ExtremeK&) const { return Kind::extreme_k; }
        Kind operator()(const MeanSummary&) const { return Kind::mean; }
        Kind operator()(const MomentSummary&) const { return Kind::moments; }
        Kind operator()(const MembershipCount&) const { return Kind::membership; }
        Kind operator()(const BarChart&) const { return Kind::bar_chart; }
        Kind operator()(const Histogram&) const { return Kind::histogram; }
        Kind operator()(const DiscreteDistribution&) const { return Kind::distribution; }
        Kind operator()(const ComposedSummary&) const { return Kind::composed; }
    };
    return std::visit(Visitor{}, payload_);
}

bool operator==(const Summary& a, const Summary& b) {
    return a.payload_ == b.payload_;
}

bool compatible(const Summary& a, const Summary& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Kind::count:
    case Kind::minimum:
    case Kind::maximum:
    case Kind::sum:
    case Kind::mean:
        return true;
    case Kind::extreme_k: {
        const auto& x = a.as<ExtremeK>();
        const auto& y = b.as<ExtremeK>();
        return x.k == y.k && x.order == y.order;
    }
    case Kind::moments:
        return a.as<MomentSummary>().order() == b.as<MomentSummary>().order();
    case Kind::membership:
        return a.as<MembershipCount>().reference == b.as<MembershipCount>().reference;
    case Kind::bar_chart:
        return a.as<BarChart>().categories == b.as<BarChart>().categories;
    case Kind::histogram:
        return a.as<Histogram>().edges == b.as<Histogram>().edges;
    case Kind::distribution:
        return a.as<DiscreteDistribution>().support == b.as<DiscreteDistribution>().support;
    case Kind::composed: {
        const auto& x = a.as<ComposedSummary>().parts;
        const auto& y = b.as<ComposedSummary>().parts;
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!compatible(x[i], y[i])) return false;
        return true;
    }
    }
    return false;
}

} // namespace msum
