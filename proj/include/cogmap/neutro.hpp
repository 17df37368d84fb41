#pragma once

#include "cogmap/rational.hpp"

#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cogmap {

/// Raised when a weight string does not match the weight grammar.
class WeightParseError : public std::invalid_argument {
public:
    WeightParseError(std::string text, std::string token);

    [[nodiscard]] const std::string& text() const noexcept { return text_; }
    [[nodiscard]] const std::string& token() const noexcept { return token_; }

private:
    std::string text_;
    std::string token_;
};

/*
 * An element a + bI of the neutrosophic ring K(I).
 *
 * I is idempotent (I*I = I), so the product of two elements is
 *
 *     (a1 + b1 I)(a2 + b2 I) = a1 a2 + (a1 b2 + b1 a2 + b1 b2) I
 *
 * Both parts are exact rationals; equality is componentwise. There is no
 * ordering: mapping a value to an activation is the job of thresholding.
 */
class NeutroValue {
public:
    constexpr NeutroValue() noexcept = default;
    constexpr NeutroValue(Rational real) noexcept : real_(real) {} // NOLINT: scalars embed as crisp values
    constexpr NeutroValue(std::int64_t real) noexcept : real_(real) {} // NOLINT
    constexpr NeutroValue(Rational real, Rational indet) noexcept : real_(real), indet_(indet) {}

    /// The indeterminate I.
    static constexpr NeutroValue indeterminate() noexcept { return {Rational{0}, Rational{1}}; }

    /// Weight grammar: [sign] scalar | [sign][scalar] "I" | [sign] scalar ("+"|"-") [scalar] "I".
    /// Scalars are integers, decimals or p/q fractions. Surrounding whitespace is ignored.
    static NeutroValue parse(std::string_view text);

    [[nodiscard]] constexpr const Rational& real_part() const noexcept { return real_; }
    [[nodiscard]] constexpr const Rational& indet_part() const noexcept { return indet_; }

    [[nodiscard]] constexpr bool is_zero() const noexcept { return real_.is_zero() && indet_.is_zero(); }
    [[nodiscard]] constexpr bool is_crisp() const noexcept { return indet_.is_zero(); }
    [[nodiscard]] constexpr bool is_pure_indeterminate() const noexcept {
        return real_.is_zero() && !indet_.is_zero();
    }

    /// Canonical text: "a", "I", "-I", "bI", "a+bI", "a-bI".
    [[nodiscard]] std::string to_string() const;

    NeutroValue& operator+=(const NeutroValue& rhs);
    NeutroValue& operator-=(const NeutroValue& rhs);
    NeutroValue& operator*=(const NeutroValue& rhs);

    friend NeutroValue operator+(NeutroValue lhs, const NeutroValue& rhs) { return lhs += rhs; }
    friend NeutroValue operator-(NeutroValue lhs, const NeutroValue& rhs) { return lhs -= rhs; }
    friend NeutroValue operator*(NeutroValue lhs, const NeutroValue& rhs) { return lhs *= rhs; }
    NeutroValue operator-() const { return {-real_, -indet_}; }

    friend constexpr bool operator==(const NeutroValue&, const NeutroValue&) noexcept = default;

    friend std::ostream& operator<<(std::ostream& os, const NeutroValue& v) { return os << v.to_string(); }

private:
    Rational real_;
    Rational indet_;
};

inline NeutroValue add(const NeutroValue& x, const NeutroValue& y) { return x + y; }
inline NeutroValue multiply(const NeutroValue& x, const NeutroValue& y) { return x * y; }
inline NeutroValue negate(const NeutroValue& x) { return -x; }
inline NeutroValue scale(const Rational& k, const NeutroValue& x) {
    return {k * x.real_part(), k * x.indet_part()};
}

inline NeutroValue parse_weight(std::string_view text) { return NeutroValue::parse(text); }
inline std::string format_weight(const NeutroValue& x) { return x.to_string(); }

}  // namespace cogmap

template <>
struct std::hash<cogmap::NeutroValue> {
    std::size_t operator()(const cogmap::NeutroValue& v) const noexcept {
        auto h = std::hash<cogmap::Rational>{}(v.real_part());
        return h ^ (std::hash<cogmap::Rational>{}(v.indet_part()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};
