#include "msum/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace msum::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_err(double x, double y) {
    if (x == y) return 0.0;
    return std::abs(x - y) / std::max(std::abs(x), std::abs(y));
}

double rel_err(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) return kInf;
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, rel_err(x[i], y[i]));
    return worst;
}

} // namespace

double max_rel_error(const Summary& a, const Summary& b) {
    if (!compatible(a, b)) return kInf;
    switch (a.kind()) {
    case Kind::count:
        return a.as<CountSummary>().n == b.as<CountSummary>().n ? 0.0 : kInf;
    case Kind::minimum:
    case Kind::maximum:
        return a.as<ExtremumSummary>().value == b.as<ExtremumSummary>().value ? 0.0 : kInf;
    case Kind::sum:
        return rel_err(a.as<SumSummary>().total, b.as<SumSummary>().total);
    case Kind::extreme_k:
        return a.as<ExtremeK>().values == b.as<ExtremeK>().values ? 0.0 : kInf;
    case Kind::mean: {
        const auto& x = a.as<MeanSummary>();
        const auto& y = b.as<MeanSummary>();
        if (x.n != y.n) return kInf;
        if (x.n == 0) return 0.0;
        return rel_err(x.mean, y.mean);
    }
    case Kind::moments: {
        const auto& x = a.as<MomentSummary>();
        const auto& y = b.as<MomentSummary>();
        if (x.n != y.n) return kInf;
        return rel_err(x.power_sums, y.power_sums);
    }
    case Kind::membership:
        return a.as<MembershipCount>().count == b.as<MembershipCount>().count ? 0.0 : kInf;
    case Kind::bar_chart:
        return a.as<BarChart>() == b.as<BarChart>() ? 0.0 : kInf;
    case Kind::histogram:
        return a.as<Histogram>() == b.as<Histogram>() ? 0.0 : kInf;
    case Kind::distribution: {
        const auto& x = a.as<DiscreteDistribution>();
        const auto& y = b.as<DiscreteDistribution>();
        if (x.n != y.n) return kInf;
        return rel_err(x.p, y.p);
    }
    case Kind::composed: {
        const auto& x = a.as<ComposedSummary>().parts;
        const auto& y = b.as<ComposedSummary>().parts;
        double worst = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            worst = std::max(worst, max_rel_error(x[i], y[i]));
        return worst;
    }
    }
    return kInf;
}

MergeReport oracle_check(const SummarySpec& spec, std::span<const Value> a_values,
                         std::span<const Value> b_values, double tolerance,
                         const MergeFn& merge_fn) {
    MergeReport report;
    report.kind = kind_name(spec.kind());
    report.a_values.assign(a_values.begin(), a_values.end());
    report.b_values.assign(b_values.begin(), b_values.end());

    Summary sa = summarize(spec, a_values);
    Summary sb = summarize(spec, b_values);
    Summary merged = merge_fn ? merge_fn(sa, sb) : merge(sa, sb);

    std::vector<Value> all(a_values.begin(), a_values.end());
    all.insert(all.end(), b_values.begin(), b_values.end());
    Summary recomputed = summarize(spec, all);

    report.merged = merged;
    report.recomputed = recomputed;

    if (merged == recomputed) {
        report.outcome = Outcome::exact_match;
        return report;
    }
    double err = max_rel_error(merged, recomputed);
    report.max_rel_error = err;
    if (spec.floating() && err <= tolerance) {
        report.outcome = Outcome::within_tolerance;
        return report;
    }
    report.outcome = Outcome::violation;
    report.detail = spec.floating()
                        ? "relative error " + std::to_string(err) + " exceeds tolerance"
                        : "exact kind differs from oracle recomputation";
    return report;
}

std::pair<std::vector<Value>, std::vector<Value>> random_split(std::span<const Value> values,
                                                               std::mt19937_64& rng) {
    std::vector<Value> a, b;
    for (const Value& v : values) {
        if (rng() & 1u)
            a.push_back(v);
        else
            b.push_back(v);
    }
    return {std::move(a), std::move(b)};
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

namespace {

std::vector<double> sorted_ascending(std::span<const double> values) {
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    return v;
}

void require_nonempty(std::span<const double> values, const char* what) {
    if (values.empty()) throw SpecError(std::string(what) + " is undefined on the empty set");
}

} // namespace

Statistic Statistic::median() {
    return Statistic("median", [](std::span<const double> values) {
        require_nonempty(values, "median");
        auto v = sorted_ascending(values);
        // sort[ceil(n/2)], 1-based.
        return v[(v.size() + 1) / 2 - 1];
    });
}

Statistic Statistic::kth_smallest(std::uint32_t k) {
    if (k == 0) throw SpecError("kth-smallest requires k >= 1");
    return Statistic("kth:" + std::to_string(k), [k](std::span<const double> values) {
        if (values.size() < k)
            throw SpecError("kth-smallest is undefined on fewer than k values");
        auto v = sorted_ascending(values);
        return v[k - 1];
    });
}

Statistic Statistic::count() {
    return Statistic("count", [](std::span<const double> values) {
        return static_cast<double>(values.size());
    });
}

Statistic Statistic::sum() {
    return Statistic("sum", [](std::span<const double> values) {
        double total = 0.0;
        for (double v : values) total += v;
        return total;
    });
}

Statistic Statistic::min() {
    return Statistic("min", [](std::span<const double> values) {
        require_nonempty(values, "min");
        return *std::min_element(values.begin(), values.end());
    });
}

Statistic Statistic::max() {
    return Statistic("max", [](std::span<const double> values) {
        require_nonempty(values, "max");
        return *std::max_element(values.begin(), values.end());
    });
}

Statistic Statistic::mean() {
    return Statistic("mean", [](std::span<const double> values) {
        require_nonempty(values, "mean");
        double total = 0.0;
        for (double v : values) total += v;
        return total / static_cast<double>(values.size());
    });
}

Statistic Statistic::by_id(const std::string& id) {
    if (id == "median") return median();
    if (id == "count") return count();
    if (id == "sum") return sum();
    if (id == "min") return min();
    if (id == "max") return max();
    if (id == "mean") return mean();
    if (id.rfind("kth:", 0) == 0) {
        try {
            unsigned long k = std::stoul(id.substr(4));
            return kth_smallest(static_cast<std::uint32_t>(k));
        } catch (const std::exception&) {
            throw SpecError("malformed kth statistic id: " + id);
        }
    }
    throw SpecError("unknown statistic: " + id);
}

// ---------------------------------------------------------------------------
// Witness quadruples
// ---------------------------------------------------------------------------

WitnessReport check_witness(const WitnessQuadruple& w) {
    if (w.a1.empty() || w.b1.empty() || w.a2.empty() || w.b2.empty())
        throw SpecError("witness quadruple has an empty component");
    Statistic stat = Statistic::by_id(w.statistic);

    auto union_of = [](const std::vector<double>& x, const std::vector<double>& y) {
        std::vector<double> u(x);
        u.insert(u.end(), y.begin(), y.end());
        return u;
    };

    WitnessReport r;
    r.stat_a1 = stat(w.a1);
    r.stat_b1 = stat(w.b1);
    r.stat_a2 = stat(w.a2);
    r.stat_b2 = stat(w.b2);
    r.stat_union1 = stat(union_of(w.a1, w.b1));
    r.stat_union2 = stat(union_of(w.a2, w.b2));
    r.a_stats_equal = r.stat_a1 == r.stat_a2;
    r.b_stats_equal = r.stat_b1 == r.stat_b2;
    r.unions_differ = r.stat_union1 != r.stat_union2;
    return r;
}

namespace {

/// All sub-multisets of `universe` with 1..max_size elements, as
/// non-decreasing index tuples in lexicographic order.
std::vector<std::vector<double>> enumerate_multisets(std::span<const double> universe,
                                                     std::uint32_t max_size) {
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> idx;
    auto emit = [&] {
        std::vector<double> m;
        m.reserve(idx.size());
        for (std::size_t i : idx) m.push_back(universe[i]);
        out.push_back(std::move(m));
    };
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (!idx.empty()) emit();
        if (idx.size() == max_size) return;
        for (std::size_t i = start; i < universe.size(); ++i) {
            idx.push_back(i);
            rec(i);
            idx.pop_back();
        }
    };
    rec(0);
    return out;
}

} // namespace

std::optional<WitnessQuadruple> search_witness(const Statistic& stat,
                                               std::span<const double> universe,
                                               std::uint32_t max_size) {
    if (universe.size() > 12) throw SpecError("witness search bounded to universes of <= 12 values");
    if (max_size == 0 || max_size > 4) throw SpecError("witness search bounded to set sizes 1..4");
    if (universe.empty()) throw SpecError("witness search needs a non-empty universe");

    std::vector<double> uni(universe.begin(), universe.end());
    std::sort(uni.begin(), uni.end());
    uni.erase(std::unique(uni.begin(), uni.end()), uni.end());

    auto multisets = enumerate_multisets(uni, max_size);

    // Group multisets (by index) into classes of equal statistic value.
    // Multisets where the statistic is undefined are skipped.
    std::map<double, std::vector<std::size_t>> classes;
    std::vector<double> stat_of(multisets.size());
    std::vector<bool> defined(multisets.size(), false);
    for (std::size_t i = 0; i < multisets.size(); ++i) {
        try {
            stat_of[i] = stat(multisets[i]);
            defined[i] = true;
            classes[stat_of[i]].push_back(i);
        } catch (const SpecError&) {
        }
    }

    // A witness (A1,B1,A2,B2) needs stat(A1)=stat(A2) and stat(B1)=stat(B2),
    // i.e. A1,A2 from one class and B1,B2 from another (or the same). For a
    // fixed class pair the quadruples are exactly the pairs of entries of the
    // product class_a x class_b, so a witness exists iff the union statistic
    // is not constant on that product.
    auto union_stat = [&](std::size_t i, std::size_t j) -> std::optional<double> {
        std::vector<double> u(multisets[i]);
        u.insert(u.end(), multisets[j].begin(), multisets[j].end());
        try {
            return stat(u);
        } catch (const SpecError&) {
            return std::nullopt;
        }
    };

    for (const auto& [stat_a, class_a] : classes) {
        for (const auto& [stat_b, class_b] : classes) {
            bool have_first = false;
            std::size_t first_a = 0, first_b = 0;
            double first_u = 0.0;
            for (std::size_t ia : class_a) {
                for (std::size_t ib : class_b) {
                    auto u = union_stat(ia, ib);
                    if (!u) continue;
                    if (!have_first) {
                        have_first = true;
                        first_a = ia;
                        first_b = ib;
                        first_u = *u;
                    } else if (*u != first_u) {
                        WitnessQuadruple w;
                        w.a1 = multisets[first_a];
                        w.b1 = multisets[first_b];
                        w.a2 = multisets[ia];
                        w.b2 = multisets[ib];
                        w.statistic = stat.id();
                        return w;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

WitnessQuadruple median_counterexample() {
    return WitnessQuadruple{{3, 4, 1}, {9, 6}, {3, 8}, {6, 2, 7}, "median"};
}

WitnessQuadruple second_smallest_counterexample() {
    return WitnessQuadruple{{1, 3, 5}, {2, 5, 6}, {3, 3, 6}, {4, 5, 7}, "kth:2"};
}

bool disjointness_guard(std::span<const std::string> a_ids, std::span<const std::string> b_ids) {
    std::unordered_set<std::string_view> seen(a_ids.begin(), a_ids.end());
    for (const auto& id : b_ids)
        if (seen.contains(id)) return false;
    return true;
}

} // namespace msum::verify
