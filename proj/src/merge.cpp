#include "msum/core.hpp"

#include <algorithm>
#include <functional>

namespace msum {

namespace {

[[noreturn]] void mismatch(const Summary& a, const Summary& b) {
    throw MergeError("cannot merge " + std::string(kind_name(a.kind())) + " with " +
                     std::string(kind_name(b.kind())) +
                     (a.kind() == b.kind() ? ": parameter mismatch" : ""));
}

template <typename Compare>
std::vector<double> merge_sorted_top(const std::vector<double>& a, const std::vector<double>& b,
                                     std::uint32_t k, Compare cmp) {
    std::vector<double> out;
    out.reserve(std::min<std::size_t>(k, a.size() + b.size()));
    std::size_t i = 0, j = 0;
    while (out.size() < k && (i < a.size() || j < b.size())) {
        if (j == b.size() || (i < a.size() && !cmp(b[j], a[i])))
            out.push_back(a[i++]);
        else
            out.push_back(b[j++]);
    }
    return out;
}

} // namespace

Summary merge(const Summary& a, const Summary& b) {
    if (!compatible(a, b)) mismatch(a, b);

    switch (a.kind()) {
    case Kind::count:
        return CountSummary{a.as<CountSummary>().n + b.as<CountSummary>().n};

    case Kind::minimum:
    case Kind::maximum: {
        const auto& x = a.as<ExtremumSummary>();
        const auto& y = b.as<ExtremumSummary>();
        if (!x.value) return y;
        if (!y.value) return x;
        double merged = x.side == Extremum::minimum ? std::min(*x.value, *y.value)
                                                    : std::max(*x.value, *y.value);
        return ExtremumSummary{x.side, merged};
    }

    case Kind::sum:
        return SumSummary{a.as<SumSummary>().total + b.as<SumSummary>().total + 0.0};

    case Kind::extreme_k: {
        const auto& x = a.as<ExtremeK>();
        const auto& y = b.as<ExtremeK>();
        ExtremeK out{x.k, x.order, {}};
        if (x.order == ExtremeOrder::smallest_first)
            out.values = merge_sorted_top(x.values, y.values, x.k, std::less<>());
        else
            out.values = merge_sorted_top(x.values, y.values, x.k, std::greater<>());
        return out;
    }

    case Kind::mean: {
        const auto& x = a.as<MeanSummary>();
        const auto& y = b.as<MeanSummary>();
        if (x.n == 0) return y;
        if (y.n == 0) return x;
        MeanSummary out;
        out.n = x.n + y.n;
        out.mean = (static_cast<double>(x.n) * x.mean + static_cast<double>(y.n) * y.mean) /
                       static_cast<double>(out.n) +
                   0.0;
        return out;
    }

    case Kind::moments: {
        const auto& x = a.as<MomentSummary>();
        const auto& y = b.as<MomentSummary>();
        MomentSummary out;
        out.n = x.n + y.n;
        out.power_sums.resize(x.power_sums.size());
        for (std::size_t i = 0; i < x.power_sums.size(); ++i)
            out.power_sums[i] = x.power_sums[i] + y.power_sums[i] + 0.0;
        return out;
    }

    case Kind::membership: {
        const auto& x = a.as<MembershipCount>();
        return MembershipCount{x.reference, x.count + b.as<MembershipCount>().count};
    }

    case Kind::bar_chart: {
        BarChart out = a.as<BarChart>();
        const auto& y = b.as<BarChart>();
        for (const auto& [label, c] : y.counts) out.counts[label] += c;
        out.n += y.n;
        return out;
    }

    case Kind::histogram: {
        Histogram out = a.as<Histogram>();
        const auto& y = b.as<Histogram>();
        for (std::size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += y.counts[i];
        out.underflow += y.underflow;
        out.overflow += y.overflow;
        out.n += y.n;
        return out;
    }

    case Kind::distribution: {
        const auto& x = a.as<DiscreteDistribution>();
        const auto& y = b.as<DiscreteDistribution>();
        if (x.n == 0) return y;
        if (y.n == 0) return x;
        DiscreteDistribution out;
        out.support = x.support;
        out.n = x.n + y.n;
        out.p.resize(x.p.size());
        double na = static_cast<double>(x.n);
        double nb = static_cast<double>(y.n);
        double nc = static_cast<double>(out.n);
        for (std::size_t i = 0; i < x.p.size(); ++i)
            out.p[i] = (na * x.p[i] + nb * y.p[i]) / nc + 0.0;
        return out;
    }

    case Kind::composed: {
        const auto& x = a.as<ComposedSummary>().parts;
        const auto& y = b.as<ComposedSummary>().parts;
        ComposedSummary out;
        out.parts.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out.parts.push_back(merge(x[i], y[i]));
        return out;
    }
    }
    throw MergeError("unknown summary kind");
}

Summary merge_all(std::span<const Summary> items) {
    if (items.empty()) throw MergeError("merge_all requires a non-empty sequence");
    Summary acc = items[0];
    for (std::size_t i = 1; i < items.size(); ++i) acc = merge(acc, items[i]);
    return acc;
}

} // namespace msum
