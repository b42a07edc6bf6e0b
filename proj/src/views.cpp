#include "msum/core.hpp"

#include <algorithm>
#include <cmath>

namespace msum {

MeanView mean_view(const MomentSummary& m) {
    if (m.n == 0) throw SpecError("mean_view of an empty moment summary");
    if (m.order() < 2) throw SpecError("moment summary of order < 2");
    double n = static_cast<double>(m.n);
    MeanView v;
    v.n = m.n;
    v.mean = m.power_sums[0] / n;
    v.stddev = std::sqrt(std::max(0.0, m.power_sums[1] / n - v.mean * v.mean));
    return v;
}

MomentSummary moments_from_stats(std::uint64_t n, double mean, double stddev) {
    if (n == 0) throw SpecError("moments_from_stats requires n >= 1");
    MomentSummary m;
    m.n = n;
    double nd = static_cast<double>(n);
    m.power_sums = {nd * mean, nd * (stddev * stddev + mean * mean)};
    return m;
}

double central_moment(const MomentSummary& m, std::uint32_t r) {
    if (m.n == 0) throw SpecError("central moment of an empty moment summary");
    if (r < 2 || r > m.order())
        throw SpecError("central moment order out of range [2, p]");
    double n = static_cast<double>(m.n);
    double mu = m.power_sums[0] / n;

    // (1/n) sum_j C(r,j) (-mu)^(r-j) S_j, with S_0 = n.
    double acc = 0.0;
    double binom = 1.0;
    for (std::uint32_t j = 0; j <= r; ++j) {
        double sj = j == 0 ? n : m.power_sums[j - 1];
        acc += binom * std::pow(-mu, static_cast<double>(r - j)) * sj;
        binom = binom * static_cast<double>(r - j) / static_cast<double>(j + 1);
    }
    return acc / n;
}

DiscreteDistribution to_distribution(const Summary& s) {
    if (const auto* b = s.get_if<BarChart>()) {
        if (b->n == 0) throw SpecError("cannot normalize an empty bar chart");
        DiscreteDistribution d;
        d.n = b->n;
        d.support = b->categories;
        d.p.reserve(d.support.size());
        for (const auto& c : d.support)
            d.p.push_back(static_cast<double>(b->counts.at(c)) / static_cast<double>(b->n));
        return d;
    }
    if (const auto* h = s.get_if<Histogram>()) {
        if (h->n == 0) throw SpecError("cannot normalize an empty histogram");
        DiscreteDistribution d;
        d.n = h->n;
        d.support = binned_support_names(h->edges);
        double n = static_cast<double>(h->n);
        d.p.reserve(h->counts.size() + 2);
        d.p.push_back(static_cast<double>(h->underflow) / n);
        for (std::uint64_t c : h->counts) d.p.push_back(static_cast<double>(c) / n);
        d.p.push_back(static_cast<double>(h->overflow) / n);
        return d;
    }
    throw SpecError("to_distribution expects a histogram or bar chart");
}

std::vector<std::uint64_t> from_distribution(const DiscreteDistribution& d) {
    std::vector<std::uint64_t> f;
    f.reserve(d.p.size());
    double n = static_cast<double>(d.n);
    std::uint64_t total = 0;
    for (double pi : d.p) {
        double implied = n * pi;
        double rounded = std::round(implied);
        if (std::abs(implied - rounded) > 1e-9)
            throw SpecError("implied frequency is not integral: n*p = " + std::to_string(implied));
        if (rounded < 0) throw SpecError("negative implied frequency");
        f.push_back(static_cast<std::uint64_t>(rounded));
        total += f.back();
    }
    if (total != d.n)
        throw SpecError("implied frequencies do not sum to n");
    return f;
}

DiscreteDistribution make_distribution(std::uint64_t n, std::vector<double> p) {
    DiscreteDistribution d;
    d.n = n;
    d.support.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) d.support.push_back(std::to_string(i));
    d.p = std::move(p);
    double total = 0.0;
    for (double pi : d.p) {
        if (pi < 0.0 || !std::isfinite(pi)) throw SpecError("probabilities must be finite and >= 0");
        total += pi;
    }
    if (n > 0 && std::abs(total - 1.0) > 1e-12)
        throw SpecError("probabilities must sum to 1");
    return d;
}

DiscreteDistribution distribution_from_frequencies(const std::vector<std::uint64_t>& f,
                                                   std::vector<std::string> support) {
    DiscreteDistribution d;
    for (std::uint64_t fi : f) d.n += fi;
    if (support.empty())
        for (std::size_t i = 0; i < f.size(); ++i) support.push_back(std::to_string(i));
    if (support.size() != f.size())
        throw SpecError("support size does not match frequency vector");
    d.support = std::move(support);
    d.p.assign(f.size(), 0.0);
    if (d.n > 0)
        for (std::size_t i = 0; i < f.size(); ++i)
            d.p[i] = static_cast<double>(f[i]) / static_cast<double>(d.n);
    return d;
}

std::optional<std::pair<double, double>> interval_bounds(const Summary& s) {
    const auto* c = s.get_if<ComposedSummary>();
    if (!c || c->parts.size() != 2)
        throw SpecError("interval view expects a composed (min, max) summary");
    const auto* lo = c->parts[0].get_if<ExtremumSummary>();
    const auto* hi = c->parts[1].get_if<ExtremumSummary>();
    if (!lo || !hi || lo->side != Extremum::minimum || hi->side != Extremum::maximum)
        throw SpecError("interval view expects a composed (min, max) summary");
    if (!lo->value || !hi->value) return std::nullopt;
    return std::make_pair(*lo->value, *hi->value);
}

} // namespace msum
