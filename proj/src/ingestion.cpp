#include "msum/ingestion.hpp"

#include "msum/serialization.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

using nlohmann::json;

namespace msum::io {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

[[noreturn]] void bad_cell(std::size_t row, const std::string& column, const std::string& what) {
    throw ParseError("row " + std::to_string(row) + ", column " + column + ": " + what);
}

// Strict CSV: comma separator, first row header, optional double-quote
// quoting with "" escapes (newlines allowed inside quotes). Not configurable,
// for bit-exact reproducibility.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (field_started && !field.empty())
                throw ParseError("line " + std::to_string(line) + ": stray quote inside field");
            quoted = true;
            field_started = true;
            break;
        case ',':
            end_field();
            break;
        case '\r':
            if (i + 1 < text.size() && text[i + 1] == '\n') break; // swallow, \n ends the row
            throw ParseError("line " + std::to_string(line) + ": bare carriage return");
        case '\n':
            end_row();
            ++line;
            break;
        default:
            field += c;
            field_started = true;
        }
    }
    if (quoted) throw ParseError("unterminated quoted field at end of file");
    if (field_started || !row.empty()) end_row(); // last line without trailing newline
    return rows;
}

double parse_numeric_cell(const std::string& text, std::size_t row, const std::string& column) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        bad_cell(row, column, "not a number: '" + text + "'");
    return v;
}

Value make_value(const VariableSpec& var, double number, std::size_t row) {
    if (!std::isfinite(number)) bad_cell(row, var.name, "non-finite value");
    return Value::number(number);
}

Value make_value(const VariableSpec& var, const std::string& label, std::size_t row) {
    if (std::find(var.categories.begin(), var.categories.end(), label) == var.categories.end())
        bad_cell(row, var.name, "unknown category '" + label + "'");
    return Value::label(label);
}

void check_summary_matches_variable(const VariableSpec& var) {
    // Spec parameters must agree with the variable's declared structure.
    std::function<void(const SummarySpec&)> check = [&](const SummarySpec& spec) {
        switch (spec.kind()) {
        case Kind::bar_chart:
            if (var.type != VarType::categorical)
                throw ParseError("variable " + var.name + ": bar-chart needs a categorical variable");
            if (spec.categories() != var.categories)
                throw ParseError("variable " + var.name +
                                 ": bar-chart categories differ from the variable's");
            break;
        case Kind::histogram:
            if (var.type != VarType::binned)
                throw ParseError("variable " + var.name + ": histogram needs a binned variable");
            if (spec.edges() != var.edges)
                throw ParseError("variable " + var.name +
                                 ": histogram edges differ from the variable's");
            break;
        case Kind::distribution:
            if (spec.edges().empty()) {
                if (var.type != VarType::categorical || spec.categories() != var.categories)
                    throw ParseError("variable " + var.name +
                                     ": distribution support differs from the variable's");
            } else if (var.type != VarType::binned || spec.edges() != var.edges) {
                throw ParseError("variable " + var.name +
                                 ": distribution support differs from the variable's");
            }
            break;
        case Kind::membership: {
            bool numeric_pred =
                std::holds_alternative<NumericRange>(spec.reference().predicate);
            if (numeric_pred && var.type == VarType::categorical)
                throw ParseError("variable " + var.name +
                                 ": numeric membership range on a categorical variable");
            if (!numeric_pred && var.type != VarType::categorical)
                throw ParseError("variable " + var.name +
                                 ": label membership set on a numeric variable");
            break;
        }
        case Kind::composed:
            for (const auto& part : spec.parts()) check(part);
            break;
        case Kind::count:
            break;
        default:
            if (var.type == VarType::categorical)
                throw ParseError("variable " + var.name + ": " +
                                 std::string(kind_name(spec.kind())) +
                                 " needs a numeric variable");
        }
    };
    check(var.summary);
}

} // namespace

Schema DataSchema::summary_schema() const {
    Schema s;
    s.reserve(variables.size());
    for (const auto& v : variables) s.push_back({v.name, v.summary});
    return s;
}

DataSchema parse_schema(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed schema JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("variables") || !j.at("variables").is_array())
        throw ParseError("schema needs a variables array");

    DataSchema schema;
    if (j.contains("id_column")) {
        if (!j.at("id_column").is_string()) throw ParseError("id_column must be a string");
        schema.id_column = j.at("id_column").get<std::string>();
    }
    for (const json& vj : j.at("variables")) {
        VariableSpec var;
        if (!vj.contains("name") || !vj.at("name").is_string())
            throw ParseError("schema variable needs a name");
        var.name = vj.at("name").get<std::string>();
        std::string type = vj.value("type", "numeric");
        if (type == "numeric") {
            var.type = VarType::numeric;
        } else if (type == "categorical") {
            var.type = VarType::categorical;
            if (!vj.contains("categories"))
                throw ParseError("variable " + var.name + ": categorical needs its label set");
            for (const json& c : vj.at("categories")) {
                if (!c.is_string()) throw ParseError("categories must be strings");
                var.categories.push_back(c.get<std::string>());
            }
        } else if (type == "binned") {
            var.type = VarType::binned;
            if (!vj.contains("edges"))
                throw ParseError("variable " + var.name + ": binned needs its edges");
            for (const json& e : vj.at("edges")) {
                if (!e.is_number()) throw ParseError("edges must be numbers");
                var.edges.push_back(e.get<double>());
            }
        } else {
            throw ParseError("variable " + var.name + ": unknown type " + type);
        }

        if (!vj.contains("summary"))
            throw ParseError("variable " + var.name + ": missing summary spec");
        json spec_json = vj.at("summary");
        // The variable's declared structure fills in omitted spec parameters.
        if (spec_json.is_object() && spec_json.contains("kind")) {
            std::string kind = spec_json.value("kind", "");
            if (var.type == VarType::categorical &&
                (kind == "bar-chart" || kind == "distribution") && !spec_json.contains("categories"))
                spec_json["categories"] = var.categories;
            if (var.type == VarType::binned &&
                (kind == "histogram" || kind == "distribution") && !spec_json.contains("edges"))
                spec_json["edges"] = var.edges;
        }
        try {
            var.summary = engine::spec_from_json(spec_json);
        } catch (const ParseError& e) {
            throw ParseError("variable " + var.name + ": " + e.what());
        }
        check_summary_matches_variable(var);
        schema.variables.push_back(std::move(var));
    }

    std::unordered_set<std::string> names;
    for (const auto& v : schema.variables)
        if (!names.insert(v.name).second)
            throw ParseError("duplicate variable name: " + v.name);
    if (schema.id_column && names.contains(*schema.id_column))
        throw ParseError("id_column must not name a summarized variable");
    if (schema.variables.empty()) throw ParseError("schema declares no variables");
    return schema;
}

DataSchema load_schema(const std::filesystem::path& path) {
    return parse_schema(read_file(path));
}

Format format_from_path(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    if (ext == ".csv") return Format::csv;
    if (ext == ".jsonl" || ext == ".ndjson") return Format::jsonl;
    throw ParseError("cannot infer format from extension: " + path.string());
}

namespace {

Dataset load_csv(const std::string& text, const DataSchema& schema) {
    auto rows = parse_csv(text);
    if (rows.empty()) throw ParseError("csv file has no header row");
    const auto& header = rows.front();

    std::map<std::string, std::size_t> col_of;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (!col_of.emplace(header[i], i).second)
            throw ParseError("duplicate column in header: " + header[i]);
    }
    std::optional<std::size_t> id_col;
    if (schema.id_column) {
        auto it = col_of.find(*schema.id_column);
        if (it == col_of.end()) throw ParseError("id column not in header: " + *schema.id_column);
        id_col = it->second;
    }
    std::vector<std::size_t> var_cols;
    for (const auto& var : schema.variables) {
        auto it = col_of.find(var.name);
        if (it == col_of.end()) throw ParseError("schema variable not in header: " + var.name);
        var_cols.push_back(it->second);
    }
    std::size_t expected = schema.variables.size() + (id_col ? 1 : 0);
    if (header.size() != expected)
        throw ParseError("header has columns not declared in the schema");

    Dataset ds;
    ds.schema = schema;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() != header.size())
            throw ParseError("row " + std::to_string(r) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(cells.size()));
        Record rec;
        rec.id = id_col ? cells[*id_col] : std::to_string(r);
        if (rec.id.empty()) bad_cell(r, schema.id_column.value_or("id"), "empty unit id");
        rec.values.reserve(schema.variables.size());
        for (std::size_t v = 0; v < schema.variables.size(); ++v) {
            const auto& var = schema.variables[v];
            const std::string& cell = cells[var_cols[v]];
            if (cell.empty()) bad_cell(r, var.name, "missing value");
            if (var.type == VarType::categorical)
                rec.values.push_back(make_value(var, cell, r));
            else
                rec.values.push_back(make_value(var, parse_numeric_cell(cell, r, var.name), r));
        }
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

Dataset load_jsonl(const std::string& text, const DataSchema& schema) {
    Dataset ds;
    ds.schema = schema;
    std::istringstream in(text);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError("row " + std::to_string(row) + ": malformed JSON: " + e.what());
        }
        if (!j.is_object()) throw ParseError("row " + std::to_string(row) + ": expected an object");

        std::size_t expected = schema.variables.size() + (schema.id_column ? 1 : 0);
        if (j.size() != expected)
            throw ParseError("row " + std::to_string(row) +
                             ": fields do not match the schema exactly");

        Record rec;
        if (schema.id_column) {
            if (!j.contains(*schema.id_column))
                bad_cell(row, *schema.id_column, "missing unit id");
            const json& idj = j.at(*schema.id_column);
            if (idj.is_string())
                rec.id = idj.get<std::string>();
            else if (idj.is_number_integer())
                rec.id = std::to_string(idj.get<std::int64_t>());
            else
                bad_cell(row, *schema.id_column, "unit id must be a string or integer");
            if (rec.id.empty()) bad_cell(row, *schema.id_column, "empty unit id");
        } else {
            rec.id = std::to_string(row);
        }
        for (const auto& var : schema.variables) {
            if (!j.contains(var.name)) bad_cell(row, var.name, "missing value");
            const json& vj = j.at(var.name);
            if (var.type == VarType::categorical) {
                if (!vj.is_string()) bad_cell(row, var.name, "category label must be a string");
                rec.values.push_back(make_value(var, vj.get<std::string>(), row));
            } else {
                if (!vj.is_number()) bad_cell(row, var.name, "expected a number");
                rec.values.push_back(make_value(var, vj.get<double>(), row));
            }
        }
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

} // namespace

Dataset load(const std::filesystem::path& path, Format format, const DataSchema& schema) {
    std::string text = read_file(path);
    Dataset ds = format == Format::csv ? load_csv(text, schema) : load_jsonl(text, schema);

    std::unordered_set<std::string_view> ids;
    for (const auto& rec : ds.records)
        if (!ids.insert(rec.id).second) throw ParseError("duplicate unit id: " + rec.id);
    return ds;
}

std::vector<Partition> split(const Dataset& ds, const SplitStrategy& strategy) {
    std::vector<Partition> parts;
    switch (strategy.mode) {
    case SplitStrategy::Mode::round_robin: {
        if (strategy.parts < 1) throw SpecError("round-robin needs k >= 1");
        parts.resize(strategy.parts);
        for (std::size_t i = 0; i < parts.size(); ++i) parts[i].id = "p" + std::to_string(i);
        for (std::size_t i = 0; i < ds.records.size(); ++i)
            parts[i % strategy.parts].records.push_back(ds.records[i]);
        break;
    }
    case SplitStrategy::Mode::contiguous: {
        if (strategy.parts < 1) throw SpecError("contiguous needs k >= 1");
        if (strategy.parts > ds.records.size())
            throw SpecError("contiguous split into more parts than records");
        std::size_t k = strategy.parts;
        std::size_t base = ds.records.size() / k;
        std::size_t extra = ds.records.size() % k; // first `extra` parts get one more
        std::size_t pos = 0;
        for (std::size_t i = 0; i < k; ++i) {
            Partition p;
            p.id = "p" + std::to_string(i);
            std::size_t len = base + (i < extra ? 1 : 0);
            p.records.assign(ds.records.begin() + static_cast<std::ptrdiff_t>(pos),
                             ds.records.begin() + static_cast<std::ptrdiff_t>(pos + len));
            pos += len;
            parts.push_back(std::move(p));
        }
        break;
    }
    case SplitStrategy::Mode::by_column: {
        std::size_t col = 0;
        bool found = false;
        for (std::size_t i = 0; i < ds.schema.variables.size(); ++i) {
            if (ds.schema.variables[i].name == strategy.column) {
                col = i;
                found = true;
                break;
            }
        }
        if (!found) throw SpecError("by-column split: unknown column " + strategy.column);
        std::map<std::string, Partition> groups; // sorted by group key
        for (const auto& rec : ds.records) {
            const Value& v = rec.values[col];
            std::string key = v.is_label() ? v.label() : engine::format_double(v.number());
            auto [it, inserted] = groups.try_emplace(key);
            if (inserted) it->second.id = strategy.column + "=" + key;
            it->second.records.push_back(rec);
        }
        for (auto& [key, part] : groups) parts.push_back(std::move(part));
        break;
    }
    }
    return parts;
}

} // namespace msum::io
