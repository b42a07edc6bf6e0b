#pragma once

// Test-only oracles: naive recomputation of every statistic straight from
// raw values. Deliberately independent of the library's summarize/merge
// code paths so a shared bug cannot hide.

#include "msum/value.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace oracle {

inline double sum(std::span<const double> v) {
    double total = 0.0;
    for (double x : v) total += x;
    return total;
}

inline double mean(std::span<const double> v) { return sum(v) / static_cast<double>(v.size()); }

inline double minimum(std::span<const double> v) { return *std::min_element(v.begin(), v.end()); }

inline double maximum(std::span<const double> v) { return *std::max_element(v.begin(), v.end()); }

/// Population standard deviation, two-pass.
inline double stddev(std::span<const double> v) {
    double mu = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

inline std::vector<double> power_sums(std::span<const double> v, std::uint32_t order) {
    std::vector<double> s(order, 0.0);
    for (double x : v)
        for (std::uint32_t k = 1; k <= order; ++k) s[k - 1] += std::pow(x, k);
    return s;
}

/// (1/n) sum (x - mu)^r directly from the deviations.
inline double central_moment(std::span<const double> v, std::uint32_t r) {
    double mu = mean(v);
    double acc = 0.0;
    for (double x : v) acc += std::pow(x - mu, static_cast<double>(r));
    return acc / static_cast<double>(v.size());
}

/// k smallest (or largest) values, duplicates preserved.
inline std::vector<double> extremes(std::span<const double> v, std::size_t k, bool smallest) {
    std::vector<double> sorted(v.begin(), v.end());
    if (smallest)
        std::sort(sorted.begin(), sorted.end());
    else
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (sorted.size() > k) sorted.resize(k);
    return sorted;
}

/// The paper's median: ascending sort, 1-based index ceil(n/2).
inline double median(std::span<const double> v) {
    auto sorted = extremes(v, v.size(), true);
    return sorted[(sorted.size() + 1) / 2 - 1];
}

inline double kth_smallest(std::span<const double> v, std::size_t k) {
    return extremes(v, v.size(), true)[k - 1];
}

/// Per-bin histogram counts by a full scan per bin: [e_i, e_{i+1}), last
/// bin closed.
inline std::vector<std::uint64_t> histogram_counts(std::span<const double> v,
                                                   std::span<const double> edges) {
    std::vector<std::uint64_t> counts(edges.size() - 1, 0);
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
        bool last = b + 2 == edges.size();
        for (double x : v)
            if (x >= edges[b] && (x < edges[b + 1] || (last && x == edges[b + 1])))
                ++counts[b];
    }
    return counts;
}

inline std::vector<double> numbers(std::span<const msum::Value> values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v.number());
    return out;
}

} // namespace oracle
