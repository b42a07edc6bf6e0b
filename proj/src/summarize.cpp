#include "msum/core.hpp"

#include <algorithm>
#include <functional>

namespace msum {

namespace {

std::vector<double> numeric_values(std::span<const Value> values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (const Value& v : values) out.push_back(v.number());
    return out;
}

void sort_by_order(std::vector<double>& v, ExtremeOrder order) {
    if (order == ExtremeOrder::smallest_first)
        std::sort(v.begin(), v.end());
    else
        std::sort(v.begin(), v.end(), std::greater<>());
}

std::size_t bin_index(const std::vector<double>& edges, double v, std::uint64_t& underflow,
                      std::uint64_t& overflow, bool& out_of_range) {
    out_of_range = false;
    if (v < edges.front()) {
        ++underflow;
        out_of_range = true;
        return 0;
    }
    if (v > edges.back()) {
        ++overflow;
        out_of_range = true;
        return 0;
    }
    if (v == edges.back()) return edges.size() - 2; // last bin is closed
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    return static_cast<std::size_t>(it - edges.begin()) - 1;
}

} // namespace

Summary summarize(const SummarySpec& spec, std::span<const Value> values) {
    switch (spec.kind()) {
    case Kind::count:
        return CountSummary{values.size()};

    case Kind::minimum:
    case Kind::maximum: {
        auto nums = numeric_values(values);
        ExtremumSummary s;
        s.side = spec.kind() == Kind::minimum ? Extremum::minimum : Extremum::maximum;
        if (!nums.empty()) {
            s.value = s.side == Extremum::minimum
                          ? *std::min_element(nums.begin(), nums.end())
                          : *std::max_element(nums.begin(), nums.end());
        }
        return s;
    }

    case Kind::sum: {
        double total = 0.0;
        for (const Value& v : values) total += v.number();
        return SumSummary{total + 0.0};
    }

    case Kind::extreme_k: {
        ExtremeK s;
        s.k = spec.k();
        s.order = spec.order();
        s.values = numeric_values(values);
        sort_by_order(s.values, s.order);
        if (s.values.size() > s.k) s.values.resize(s.k);
        return s;
    }

    case Kind::mean: {
        MeanSummary s;
        s.n = values.size();
        if (s.n > 0) {
            double total = 0.0;
            for (const Value& v : values) total += v.number();
            s.mean = total / static_cast<double>(s.n) + 0.0;
        }
        return s;
    }

    case Kind::moments: {
        MomentSummary s;
        s.n = values.size();
        s.power_sums.assign(spec.moment_order(), 0.0);
        for (const Value& v : values) {
            double x = v.number();
            double power = 1.0;
            for (std::uint32_t j = 0; j < spec.moment_order(); ++j) {
                power *= x;
                s.power_sums[j] += power;
            }
        }
        for (double& sk : s.power_sums) sk += 0.0;
        return s;
    }

    case Kind::membership: {
        MembershipCount s;
        s.reference = spec.reference();
        for (const Value& v : values)
            if (s.reference.contains(v)) ++s.count;
        return s;
    }

    case Kind::bar_chart: {
        BarChart b;
        b.categories = spec.categories();
        for (const auto& c : b.categories) b.counts[c] = 0;
        for (const Value& v : values) {
            auto it = b.counts.find(v.label());
            if (it == b.counts.end())
                throw SpecError("unknown category label: " + v.label());
            ++it->second;
            ++b.n;
        }
        return b;
    }

    case Kind::histogram: {
        Histogram h;
        h.edges = spec.edges();
        h.counts.assign(h.edges.size() - 1, 0);
        for (const Value& v : values) {
            bool out = false;
            std::size_t idx = bin_index(h.edges, v.number(), h.underflow, h.overflow, out);
            if (!out) ++h.counts[idx];
            ++h.n;
        }
        return h;
    }

    case Kind::distribution: {
        DiscreteDistribution d;
        std::vector<std::uint64_t> freq;
        if (spec.edges().empty()) {
            d.support = spec.categories();
            freq.assign(d.support.size(), 0);
            for (const Value& v : values) {
                auto it = std::find(d.support.begin(), d.support.end(), v.label());
                if (it == d.support.end())
                    throw SpecError("unknown category label: " + v.label());
                ++freq[static_cast<std::size_t>(it - d.support.begin())];
            }
        } else {
            const auto& edges = spec.edges();
            d.support = binned_support_names(edges);
            freq.assign(d.support.size(), 0);
            std::uint64_t underflow = 0, overflow = 0;
            for (const Value& v : values) {
                bool out = false;
                std::size_t idx = bin_index(edges, v.number(), underflow, overflow, out);
                if (!out) ++freq[idx + 1];
            }
            freq.front() = underflow;
            freq.back() = overflow;
        }
        d.n = values.size();
        d.p.assign(d.support.size(), 0.0);
        if (d.n > 0)
            for (std::size_t i = 0; i < freq.size(); ++i)
                d.p[i] = static_cast<double>(freq[i]) / static_cast<double>(d.n);
        return d;
    }

    case Kind::composed: {
        ComposedSummary c;
        c.parts.reserve(spec.parts().size());
        for (const auto& part : spec.parts()) c.parts.push_back(summarize(part, values));
        return c;
    }
    }
    throw SpecError("unknown summary kind");
}

} // namespace msum
