#include "msum/render.hpp"

#include "msum/serialization.hpp"

#include <sstream>

namespace msum {

namespace {

using engine::format_double;

std::string join_reals(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_double(v[i]);
    }
    return out + "]";
}

} // namespace

std::string to_text(const Summary& s) {
    switch (s.kind()) {
    case Kind::count:
        return "n=" + std::to_string(s.as<CountSummary>().n);
    case Kind::minimum:
    case Kind::maximum: {
        const auto& e = s.as<ExtremumSummary>();
        std::string name = e.side == Extremum::minimum ? "min" : "max";
        return name + "=" + (e.value ? format_double(*e.value) : "empty");
    }
    case Kind::sum:
        return "sum=" + format_double(s.as<SumSummary>().total);
    case Kind::extreme_k: {
        const auto& e = s.as<ExtremeK>();
        return (e.order == ExtremeOrder::smallest_first ? "smallest-" : "largest-") +
               std::to_string(e.k) + "=" + join_reals(e.values);
    }
    case Kind::mean: {
        const auto& m = s.as<MeanSummary>();
        if (m.n == 0) return "n=0 mean=empty";
        return "n=" + std::to_string(m.n) + " mean=" + format_double(m.mean);
    }
    case Kind::moments: {
        const auto& m = s.as<MomentSummary>();
        std::string out = "n=" + std::to_string(m.n);
        if (m.n > 0) {
            MeanView v = mean_view(m);
            out += " mean=" + format_double(v.mean) + " stddev=" + format_double(v.stddev);
        }
        return out + " power_sums=" + join_reals(m.power_sums);
    }
    case Kind::membership: {
        const auto& m = s.as<MembershipCount>();
        return "|A ∩ " + m.reference.id + "|=" + std::to_string(m.count);
    }
    case Kind::bar_chart: {
        const auto& b = s.as<BarChart>();
        std::string out = "n=" + std::to_string(b.n) + " {";
        for (std::size_t i = 0; i < b.categories.size(); ++i) {
            if (i) out += ", ";
            out += b.categories[i] + ": " + std::to_string(b.counts.at(b.categories[i]));
        }
        return out + "}";
    }
    case Kind::histogram: {
        const auto& h = s.as<Histogram>();
        std::string out = "n=" + std::to_string(h.n) + " bins=[";
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            if (i) out += ", ";
            out += std::to_string(h.counts[i]);
        }
        out += "]";
        if (h.underflow) out += " underflow=" + std::to_string(h.underflow);
        if (h.overflow) out += " overflow=" + std::to_string(h.overflow);
        return out;
    }
    case Kind::distribution: {
        const auto& d = s.as<DiscreteDistribution>();
        return "n=" + std::to_string(d.n) + " p=" + join_reals(d.p);
    }
    case Kind::composed: {
        const auto& c = s.as<ComposedSummary>();
        if (c.parts.size() == 2) {
            const auto* lo = c.parts[0].get_if<ExtremumSummary>();
            const auto* hi = c.parts[1].get_if<ExtremumSummary>();
            if (lo && hi && lo->side == Extremum::minimum && hi->side == Extremum::maximum &&
                lo->value && hi->value) {
                return "[" + format_double(*lo->value) + ", " + format_double(*hi->value) + "]";
            }
        }
        std::string out = "(";
        for (std::size_t i = 0; i < c.parts.size(); ++i) {
            if (i) out += ", ";
            out += to_text(c.parts[i]);
        }
        return out + ")";
    }
    }
    return "?";
}

std::string to_table(const SchemaSummary& s) {
    std::size_t width = 8;
    for (const auto& [name, summary] : s.parts) width = std::max(width, name.size());
    std::ostringstream out;
    out << std::left;
    for (const auto& [name, summary] : s.parts) {
        out.width(static_cast<std::streamsize>(width + 2));
        out << name;
        out << kind_name(summary.kind()) << ": " << to_text(summary) << '\n';
    }
    return out.str();
}

} // namespace msum
