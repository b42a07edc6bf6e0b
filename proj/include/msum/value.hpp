#pragma once

#include "msum/error.hpp"

#include <cmath>
#include <string>
#include <variant>

namespace msum {

/// A single measured value: either a finite real number (numeric variables)
/// or a category label drawn from a finite label set (nominal variables).
///
/// NaN and infinities are rejected at construction; negative zero is
/// normalized to +0 so that value-identical summaries are bit-identical.
class Value {
public:
    Value(double v) : v_(check_finite(v)) {}
    Value(std::string label) : v_(std::move(label)) {}
    Value(const char* label) : v_(std::string(label)) {}

    static Value number(double v) { return Value(v); }
    static Value label(std::string s) { return Value(std::move(s)); }

    bool is_number() const { return std::holds_alternative<double>(v_); }
    bool is_label() const { return std::holds_alternative<std::string>(v_); }

    double number() const {
        if (!is_number()) throw SpecError("categorical value used where a numeric value is required");
        return std::get<double>(v_);
    }

    const std::string& label() const {
        if (!is_label()) throw SpecError("numeric value used where a category label is required");
        return std::get<std::string>(v_);
    }

    friend bool operator==(const Value&, const Value&) = default;

private:
    static double check_finite(double v) {
        if (!std::isfinite(v)) throw SpecError("non-finite numeric value");
        return v + 0.0; // -0.0 -> +0.0
    }

    std::variant<double, std::string> v_;
};

} // namespace msum
