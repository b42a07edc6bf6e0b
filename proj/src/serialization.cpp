#include "msum/serialization.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>

using nlohmann::json;

namespace msum::engine {

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

std::string to_hex16(std::uint64_t bits) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[bits & 0xf];
        bits >>= 4;
    }
    return out;
}

std::uint64_t from_hex16(const std::string& s) {
    if (s.size() != 16) bad("hex numeric field must be 16 digits: " + s);
    std::uint64_t bits = 0;
    for (char c : s) {
        bits <<= 4;
        if (c >= '0' && c <= '9')
            bits |= static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f')
            bits |= static_cast<std::uint64_t>(c - 'a' + 10);
        else
            bad("bad hex digit in numeric field: " + s);
    }
    return bits;
}

/// Data-field codec: counts and reals switch representation with the mode,
/// spec parameters stay plain JSON.
struct Codec {
    NumericMode mode;

    json count(std::uint64_t n) const {
        if (mode == NumericMode::decimal) return n;
        return to_hex16(n);
    }

    json real(double v) const {
        if (mode == NumericMode::decimal) return v;
        return to_hex16(std::bit_cast<std::uint64_t>(v));
    }

    json reals(const std::vector<double>& v) const {
        json arr = json::array();
        for (double x : v) arr.push_back(real(x));
        return arr;
    }

    std::uint64_t get_count(const json& j, const char* field) const {
        if (!j.contains(field)) bad(std::string("missing field: ") + field);
        const json& v = j.at(field);
        if (mode == NumericMode::decimal) {
            if (!v.is_number_unsigned()) bad(std::string(field) + " must be a non-negative integer");
            return v.get<std::uint64_t>();
        }
        return from_hex16(v.get<std::string>());
    }

    double get_real(const json& j, const char* field) const {
        if (!j.contains(field)) bad(std::string("missing field: ") + field);
        return get_real_value(j.at(field), field);
    }

    double get_real_value(const json& v, const char* field) const {
        double x;
        if (mode == NumericMode::decimal) {
            if (!v.is_number()) bad(std::string(field) + " must be a number");
            x = v.get<double>();
        } else {
            x = std::bit_cast<double>(from_hex16(v.get<std::string>()));
        }
        if (!std::isfinite(x)) bad(std::string(field) + " must be finite");
        return x;
    }

    std::vector<double> get_reals(const json& j, const char* field) const {
        if (!j.contains(field) || !j.at(field).is_array())
            bad(std::string(field) + " must be an array");
        std::vector<double> out;
        out.reserve(j.at(field).size());
        for (const json& v : j.at(field)) out.push_back(get_real_value(v, field));
        return out;
    }
};

std::vector<std::string> get_strings(const json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_array())
        bad(std::string(field) + " must be an array of strings");
    std::vector<std::string> out;
    for (const json& v : j.at(field)) {
        if (!v.is_string()) bad(std::string(field) + " must contain only strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::vector<double> get_plain_doubles(const json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_array())
        bad(std::string(field) + " must be an array of numbers");
    std::vector<double> out;
    for (const json& v : j.at(field)) {
        if (!v.is_number()) bad(std::string(field) + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

json reference_to_json(const ReferenceSet& r) {
    json j;
    j["id"] = r.id;
    if (const auto* range = std::get_if<NumericRange>(&r.predicate))
        j["range"] = json::array({range->lo, range->hi});
    else
        j["labels"] = std::get<LabelSet>(r.predicate).labels;
    return j;
}

ReferenceSet reference_from_json(const json& j) {
    ReferenceSet r;
    if (!j.contains("id") || !j.at("id").is_string()) bad("reference set needs an id");
    r.id = j.at("id").get<std::string>();
    if (j.contains("range")) {
        auto bounds = get_plain_doubles(j, "range");
        if (bounds.size() != 2) bad("reference range must be [lo, hi]");
        r.predicate = NumericRange{bounds[0], bounds[1]};
    } else if (j.contains("labels")) {
        LabelSet ls{get_strings(j, "labels")};
        std::sort(ls.labels.begin(), ls.labels.end());
        r.predicate = std::move(ls);
    } else {
        bad("reference set needs a range or labels predicate");
    }
    return r;
}

} // namespace

std::string_view numeric_mode_name(NumericMode m) {
    return m == NumericMode::decimal ? "decimal" : "hex";
}

NumericMode numeric_mode_from_name(std::string_view name) {
    if (name == "decimal") return NumericMode::decimal;
    if (name == "hex") return NumericMode::hex;
    throw ParseError("unknown numeric mode: " + std::string(name));
}

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ParseError("malformed number: " + std::string(text));
    return v;
}

// ---------------------------------------------------------------------------
// SummarySpec codec (parameters are always plain JSON)
// ---------------------------------------------------------------------------

json spec_to_json(const SummarySpec& spec) {
    json j;
    j["kind"] = kind_name(spec.kind());
    switch (spec.kind()) {
    case Kind::extreme_k:
        j["k"] = spec.k();
        j["order"] = spec.order() == ExtremeOrder::smallest_first ? "smallest" : "largest";
        break;
    case Kind::moments:
        j["order"] = spec.moment_order();
        break;
    case Kind::membership:
        j["reference"] = reference_to_json(spec.reference());
        break;
    case Kind::bar_chart:
        j["categories"] = spec.categories();
        break;
    case Kind::histogram:
        j["edges"] = spec.edges();
        break;
    case Kind::distribution:
        if (spec.edges().empty())
            j["categories"] = spec.categories();
        else
            j["edges"] = spec.edges();
        break;
    case Kind::composed: {
        json parts = json::array();
        for (const auto& p : spec.parts()) parts.push_back(spec_to_json(p));
        j["parts"] = std::move(parts);
        break;
    }
    default:
        break;
    }
    return j;
}

SummarySpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        bad("summary spec needs a kind");
    std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "count") return SummarySpec::count();
        if (kind == "min") return SummarySpec::minimum();
        if (kind == "max") return SummarySpec::maximum();
        if (kind == "sum") return SummarySpec::sum();
        if (kind == "mean") return SummarySpec::mean();
        if (kind == "interval") return SummarySpec::interval();
        if (kind == "extreme-k") {
            if (!j.contains("k") || !j.at("k").is_number_unsigned()) bad("extreme-k needs k");
            std::string order = j.value("order", "smallest");
            if (order != "smallest" && order != "largest") bad("order must be smallest or largest");
            return SummarySpec::extreme_k(j.at("k").get<std::uint32_t>(),
                                          order == "smallest" ? ExtremeOrder::smallest_first
                                                              : ExtremeOrder::largest_first);
        }
        if (kind == "moments") {
            if (!j.contains("order") || !j.at("order").is_number_unsigned())
                bad("moments needs an order");
            return SummarySpec::moments(j.at("order").get<std::uint32_t>());
        }
        if (kind == "membership")
            return SummarySpec::membership(reference_from_json(j.at("reference")));
        if (kind == "bar-chart") return SummarySpec::bar_chart(get_strings(j, "categories"));
        if (kind == "histogram") return SummarySpec::histogram(get_plain_doubles(j, "edges"));
        if (kind == "distribution") {
            if (j.contains("edges"))
                return SummarySpec::distribution_binned(get_plain_doubles(j, "edges"));
            return SummarySpec::distribution_over(get_strings(j, "categories"));
        }
        if (kind == "composed") {
            if (!j.contains("parts") || !j.at("parts").is_array()) bad("composed needs parts");
            std::vector<SummarySpec> parts;
            for (const json& p : j.at("parts")) parts.push_back(spec_from_json(p));
            return SummarySpec::composed(std::move(parts));
        }
    } catch (const SpecError& e) {
        bad(std::string("invalid spec: ") + e.what());
    }
    bad("unknown summary kind: " + kind);
}

// ---------------------------------------------------------------------------
// Summary payload codec
// ---------------------------------------------------------------------------

namespace {

json payload_to_json(const Summary& s, const Codec& c) {
    json j;
    j["kind"] = kind_name(s.kind());
    switch (s.kind()) {
    case Kind::count:
        j["n"] = c.count(s.as<CountSummary>().n);
        break;
    case Kind::minimum:
    case Kind::maximum: {
        const auto& e = s.as<ExtremumSummary>();
        j["value"] = e.value ? c.real(*e.value) : json(nullptr);
        break;
    }
    case Kind::sum:
        j["total"] = c.real(s.as<SumSummary>().total);
        break;
    case Kind::extreme_k: {
        const auto& e = s.as<ExtremeK>();
        j["k"] = e.k;
        j["order"] = e.order == ExtremeOrder::smallest_first ? "smallest" : "largest";
        j["values"] = c.reals(e.values);
        break;
    }
    case Kind::mean: {
        const auto& m = s.as<MeanSummary>();
        j["n"] = c.count(m.n);
        j["mean"] = c.real(m.mean);
        break;
    }
    case Kind::moments: {
        const auto& m = s.as<MomentSummary>();
        j["n"] = c.count(m.n);
        j["power_sums"] = c.reals(m.power_sums);
        break;
    }
    case Kind::membership: {
        const auto& m = s.as<MembershipCount>();
        j["reference"] = reference_to_json(m.reference);
        j["count"] = c.count(m.count);
        break;
    }
    case Kind::bar_chart: {
        const auto& b = s.as<BarChart>();
        j["categories"] = b.categories;
        json counts;
        for (const auto& [label, n] : b.counts) counts[label] = c.count(n);
        j["counts"] = std::move(counts);
        j["n"] = c.count(b.n);
        break;
    }
    case Kind::histogram: {
        const auto& h = s.as<Histogram>();
        j["edges"] = h.edges;
        json counts = json::array();
        for (std::uint64_t n : h.counts) counts.push_back(c.count(n));
        j["counts"] = std::move(counts);
        j["underflow"] = c.count(h.underflow);
        j["overflow"] = c.count(h.overflow);
        j["n"] = c.count(h.n);
        break;
    }
    case Kind::distribution: {
        const auto& d = s.as<DiscreteDistribution>();
        j["n"] = c.count(d.n);
        j["p"] = c.reals(d.p);
        j["support"] = d.support;
        break;
    }
    case Kind::composed: {
        json parts = json::array();
        for (const auto& p : s.as<ComposedSummary>().parts) parts.push_back(payload_to_json(p, c));
        j["parts"] = std::move(parts);
        break;
    }
    }
    return j;
}

Summary payload_from_json(const json& j, const Codec& c) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        bad("summary payload needs a kind");
    Kind kind = kind_from_name(j.at("kind").get<std::string>());
    switch (kind) {
    case Kind::count:
        return CountSummary{c.get_count(j, "n")};

    case Kind::minimum:
    case Kind::maximum: {
        ExtremumSummary e;
        e.side = kind == Kind::minimum ? Extremum::minimum : Extremum::maximum;
        if (!j.contains("value")) bad("extremum needs a value field");
        if (!j.at("value").is_null()) e.value = c.get_real(j, "value");
        return e;
    }

    case Kind::sum:
        return SumSummary{c.get_real(j, "total")};

    case Kind::extreme_k: {
        ExtremeK e;
        if (!j.contains("k") || !j.at("k").is_number_unsigned()) bad("extreme-k needs k");
        e.k = j.at("k").get<std::uint32_t>();
        if (e.k == 0) bad("extreme-k needs k >= 1");
        std::string order = j.value("order", "smallest");
        if (order != "smallest" && order != "largest") bad("order must be smallest or largest");
        e.order = order == "smallest" ? ExtremeOrder::smallest_first : ExtremeOrder::largest_first;
        e.values = c.get_reals(j, "values");
        if (e.values.size() > e.k) bad("extreme-k holds more than k values");
        auto sorted = e.values;
        if (e.order == ExtremeOrder::smallest_first)
            std::sort(sorted.begin(), sorted.end());
        else
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
        if (sorted != e.values) bad("extreme-k values are not sorted by the declared order");
        return e;
    }

    case Kind::mean: {
        MeanSummary m;
        m.n = c.get_count(j, "n");
        m.mean = c.get_real(j, "mean");
        if (m.n == 0 && m.mean != 0.0) bad("empty mean summary must carry mean 0");
        return m;
    }

    case Kind::moments: {
        MomentSummary m;
        m.n = c.get_count(j, "n");
        m.power_sums = c.get_reals(j, "power_sums");
        if (m.power_sums.size() < 2) bad("moment summary needs order >= 2");
        if (m.n == 0) {
            for (double sk : m.power_sums)
                if (sk != 0.0) bad("empty moment summary must have zero power sums");
        } else {
            double n = static_cast<double>(m.n);
            double mu = m.power_sums[0] / n;
            double var = m.power_sums[1] / n - mu * mu;
            double slack = 1e-9 * std::max(1.0, std::abs(m.power_sums[1] / n) + mu * mu);
            if (var < -slack) bad("moment summary implies negative variance");
        }
        return m;
    }

    case Kind::membership: {
        MembershipCount m;
        if (!j.contains("reference")) bad("membership needs a reference set");
        m.reference = reference_from_json(j.at("reference"));
        m.count = c.get_count(j, "count");
        return m;
    }

    case Kind::bar_chart: {
        BarChart b;
        b.categories = get_strings(j, "categories");
        if (b.categories.empty()) bad("bar chart needs categories");
        if (!j.contains("counts") || !j.at("counts").is_object())
            bad("bar chart needs a counts object");
        std::uint64_t total = 0;
        for (const auto& [label, v] : j.at("counts").items()) {
            if (std::find(b.categories.begin(), b.categories.end(), label) == b.categories.end())
                bad("bar chart counts a label outside its category set: " + label);
            std::uint64_t n = c.mode == NumericMode::decimal
                                  ? (v.is_number_unsigned()
                                         ? v.get<std::uint64_t>()
                                         : throw ParseError("counts must be non-negative integers"))
                                  : from_hex16(v.get<std::string>());
            b.counts[label] = n;
            total += n;
        }
        if (b.counts.size() != b.categories.size())
            bad("bar chart counts must cover every category");
        b.n = c.get_count(j, "n");
        if (b.n != total) bad("bar chart total n does not match the sum of counts");
        return b;
    }

    case Kind::histogram: {
        Histogram h;
        h.edges = get_plain_doubles(j, "edges");
        if (h.edges.size() < 2) bad("histogram needs at least two edges");
        for (std::size_t i = 0; i + 1 < h.edges.size(); ++i)
            if (!(h.edges[i] < h.edges[i + 1])) bad("histogram edges must be strictly increasing");
        if (!j.contains("counts") || !j.at("counts").is_array()) bad("histogram needs counts");
        for (const json& v : j.at("counts"))
            h.counts.push_back(c.mode == NumericMode::decimal
                                   ? (v.is_number_unsigned()
                                          ? v.get<std::uint64_t>()
                                          : throw ParseError("counts must be non-negative integers"))
                                   : from_hex16(v.get<std::string>()));
        if (h.counts.size() + 1 != h.edges.size()) bad("histogram counts do not match bins");
        h.underflow = c.get_count(j, "underflow");
        h.overflow = c.get_count(j, "overflow");
        h.n = c.get_count(j, "n");
        std::uint64_t total = h.underflow + h.overflow;
        for (std::uint64_t n : h.counts) total += n;
        if (h.n != total) bad("histogram total n does not match the sum of counts");
        return h;
    }

    case Kind::distribution: {
        DiscreteDistribution d;
        d.n = c.get_count(j, "n");
        d.p = c.get_reals(j, "p");
        d.support = get_strings(j, "support");
        if (d.support.size() != d.p.size()) bad("distribution support does not match p");
        double total = 0.0;
        for (double pi : d.p) {
            if (pi < 0.0) bad("distribution probabilities must be >= 0");
            total += pi;
        }
        if (d.n == 0) {
            if (total != 0.0) bad("empty distribution must have zero probabilities");
        } else if (std::abs(total - 1.0) > 1e-12) {
            bad("distribution probabilities do not sum to 1");
        }
        return d;
    }

    case Kind::composed: {
        if (!j.contains("parts") || !j.at("parts").is_array()) bad("composed needs parts");
        ComposedSummary out;
        for (const json& p : j.at("parts")) out.parts.push_back(payload_from_json(p, c));
        if (out.parts.empty()) bad("composed summary needs at least one part");
        return out;
    }
    }
    bad("unknown summary kind");
}

} // namespace

json summary_to_json(const Summary& s, NumericMode mode) {
    return payload_to_json(s, Codec{mode});
}

Summary summary_from_json(const json& j, NumericMode mode) {
    return payload_from_json(j, Codec{mode});
}

// ---------------------------------------------------------------------------
// Envelopes
// ---------------------------------------------------------------------------

std::string serialize(const Summary& s, NumericMode mode) {
    json j;
    j["version"] = kFormatVersion;
    j["floats"] = numeric_mode_name(mode);
    j["summary"] = summary_to_json(s, mode);
    return j.dump();
}

Summary deserialize(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::exception& e) {
        bad(std::string("malformed summary JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("version") || !j.at("version").is_number_integer())
        bad("summary envelope needs a version");
    if (j.at("version").get<int>() != kFormatVersion)
        bad("unsupported format version: " + j.at("version").dump());
    NumericMode mode = numeric_mode_from_name(j.value("floats", "decimal"));
    if (!j.contains("summary")) bad("summary envelope has no payload");
    return summary_from_json(j.at("summary"), mode);
}

std::string serialize(const SchemaSummary& s, NumericMode mode) {
    json vars = json::array();
    for (const auto& [name, summary] : s.parts) {
        json v;
        v["name"] = name;
        v["summary"] = summary_to_json(summary, mode);
        vars.push_back(std::move(v));
    }
    json j;
    j["version"] = kFormatVersion;
    j["floats"] = numeric_mode_name(mode);
    j["variables"] = std::move(vars);
    return j.dump();
}

SchemaSummary deserialize_schema_summary(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::exception& e) {
        bad(std::string("malformed summary JSON: ") + e.what());
    }
    if (j.value("version", -1) != kFormatVersion) bad("unsupported format version");
    NumericMode mode = numeric_mode_from_name(j.value("floats", "decimal"));
    if (!j.contains("variables") || !j.at("variables").is_array())
        bad("schema summary needs a variables array");
    SchemaSummary out;
    for (const json& v : j.at("variables")) {
        if (!v.contains("name") || !v.at("name").is_string()) bad("variable needs a name");
        out.parts.emplace_back(v.at("name").get<std::string>(),
                               summary_from_json(v.at("summary"), mode));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification reports
// ---------------------------------------------------------------------------

json report_to_json(const verify::MergeReport& report) {
    json j;
    j["kind"] = report.kind;
    switch (report.outcome) {
    case verify::Outcome::exact_match: j["outcome"] = "exact-match"; break;
    case verify::Outcome::within_tolerance: j["outcome"] = "within-tolerance"; break;
    case verify::Outcome::violation: j["outcome"] = "violation"; break;
    }
    j["max_rel_error"] = report.max_rel_error;
    auto values_to_json = [](const std::vector<Value>& values) {
        json arr = json::array();
        for (const Value& v : values) {
            if (v.is_number())
                arr.push_back(v.number());
            else
                arr.push_back(v.label());
        }
        return arr;
    };
    j["a_values"] = values_to_json(report.a_values);
    j["b_values"] = values_to_json(report.b_values);
    if (report.outcome == verify::Outcome::violation) {
        j["detail"] = report.detail;
        if (report.merged) j["merged"] = summary_to_json(*report.merged);
        if (report.recomputed) j["recomputed"] = summary_to_json(*report.recomputed);
    }
    return j;
}

json witness_to_json(const verify::WitnessQuadruple& w, const verify::WitnessReport& r) {
    json j;
    j["statistic"] = w.statistic;
    j["a1"] = w.a1;
    j["b1"] = w.b1;
    j["a2"] = w.a2;
    j["b2"] = w.b2;
    j["stat_a1"] = r.stat_a1;
    j["stat_b1"] = r.stat_b1;
    j["stat_a2"] = r.stat_a2;
    j["stat_b2"] = r.stat_b2;
    j["stat_union1"] = r.stat_union1;
    j["stat_union2"] = r.stat_union2;
    j["valid"] = r.valid();
    return j;
}

} // namespace msum::engine
