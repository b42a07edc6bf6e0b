#include "msum/spec.hpp"

#include <algorithm>
#include <charconv>

namespace msum {

namespace {

void check_edges(const std::vector<double>& edges) {
    if (edges.size() < 2) throw SpecError("histogram needs at least two bin edges");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1]))
            throw SpecError("bin edges must be strictly increasing");
}

void check_categories(const std::vector<std::string>& categories) {
    if (categories.empty()) throw SpecError("category set must be non-empty");
    auto sorted = categories;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw SpecError("duplicate category label");
}

std::string format_edge(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

SummarySpec SummarySpec::count() {
    SummarySpec s;
    s.kind_ = Kind::count;
    return s;
}

SummarySpec SummarySpec::minimum() {
    SummarySpec s;
    s.kind_ = Kind::minimum;
    return s;
}

SummarySpec SummarySpec::maximum() {
    SummarySpec s;
    s.kind_ = Kind::maximum;
    return s;
}

SummarySpec SummarySpec::sum() {
    SummarySpec s;
    s.kind_ = Kind::sum;
    return s;
}

SummarySpec SummarySpec::extreme_k(std::uint32_t k, ExtremeOrder order) {
    if (k == 0) throw SpecError("extreme-k requires k >= 1");
    SummarySpec s;
    s.kind_ = Kind::extreme_k;
    s.k_ = k;
    s.order_ = order;
    return s;
}

SummarySpec SummarySpec::mean() {
    SummarySpec s;
    s.kind_ = Kind::mean;
    return s;
}

SummarySpec SummarySpec::moments(std::uint32_t order) {
    if (order < 2) throw SpecError("moment order must be >= 2");
    SummarySpec s;
    s.kind_ = Kind::moments;
    s.moment_order_ = order;
    return s;
}

SummarySpec SummarySpec::membership(ReferenceSet reference) {
    if (auto* ls = std::get_if<LabelSet>(&reference.predicate)) {
        std::sort(ls->labels.begin(), ls->labels.end());
        ls->labels.erase(std::unique(ls->labels.begin(), ls->labels.end()), ls->labels.end());
    }
    SummarySpec s;
    s.kind_ = Kind::membership;
    s.reference_ = std::move(reference);
    return s;
}

SummarySpec SummarySpec::bar_chart(std::vector<std::string> categories) {
    check_categories(categories);
    SummarySpec s;
    s.kind_ = Kind::bar_chart;
    s.categories_ = std::move(categories);
    return s;
}

SummarySpec SummarySpec::histogram(std::vector<double> edges) {
    check_edges(edges);
    SummarySpec s;
    s.kind_ = Kind::histogram;
    s.edges_ = std::move(edges);
    return s;
}

SummarySpec SummarySpec::distribution_over(std::vector<std::string> categories) {
    check_categories(categories);
    SummarySpec s;
    s.kind_ = Kind::distribution;
    s.categories_ = std::move(categories);
    return s;
}

SummarySpec SummarySpec::distribution_binned(std::vector<double> edges) {
    check_edges(edges);
    SummarySpec s;
    s.kind_ = Kind::distribution;
    s.edges_ = std::move(edges);
    return s;
}

SummarySpec SummarySpec::composed(std::vector<SummarySpec> parts) {
    if (parts.empty()) throw SpecError("composition needs at least one part");
    SummarySpec s;
    s.kind_ = Kind::composed;
    s.parts_ = std::move(parts);
    return s;
}

SummarySpec SummarySpec::interval() {
    return composed({minimum(), maximum()});
}

std::vector<std::string> binned_support_names(const std::vector<double>& edges) {
    std::vector<std::string> names;
    names.reserve(edges.size() + 1);
    names.push_back("underflow");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        bool last = i + 2 == edges.size();
        names.push_back("[" + format_edge(edges[i]) + "," + format_edge(edges[i + 1]) +
                        (last ? "]" : ")"));
    }
    names.push_back("overflow");
    return names;
}

Summary SummarySpec::empty_summary() const {
    switch (kind_) {
    case Kind::count: return CountSummary{};
    case Kind::minimum: return ExtremumSummary{Extremum::minimum, std::nullopt};
    case Kind::maximum: return ExtremumSummary{Extremum::maximum, std::nullopt};
    case Kind::sum: return SumSummary{};
    case Kind::extreme_k: return ExtremeK{k_, order_, {}};
    case Kind::mean: return MeanSummary{};
    case Kind::moments: return MomentSummary{0, std::vector<double>(moment_order_, 0.0)};
    case Kind::membership: return MembershipCount{reference_, 0};
    case Kind::bar_chart: {
        BarChart b;
        b.categories = categories_;
        for (const auto& c : categories_) b.counts[c] = 0;
        return b;
    }
    case Kind::histogram: {
        Histogram h;
        h.edges = edges_;
        h.counts.assign(edges_.size() - 1, 0);
        return h;
    }
    case Kind::distribution: {
        DiscreteDistribution d;
        d.support = edges_.empty() ? categories_ : binned_support_names(edges_);
        d.p.assign(d.support.size(), 0.0);
        return d;
    }
    case Kind::composed: {
        ComposedSummary c;
        c.parts.reserve(parts_.size());
        for (const auto& part : parts_) c.parts.push_back(part.empty_summary());
        return c;
    }
    }
    throw SpecError("unknown summary kind");
}

bool SummarySpec::floating() const {
    switch (kind_) {
    case Kind::sum:
    case Kind::mean:
    case Kind::moments:
    case Kind::distribution:
        return true;
    case Kind::composed:
        return std::any_of(parts_.begin(), parts_.end(),
                           [](const SummarySpec& p) { return p.floating(); });
    default:
        return false;
    }
}

} // namespace msum
