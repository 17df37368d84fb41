#include "cogmap/rational.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace cogmap {

namespace {

__extension__ typedef __int128 wide;

wide wide_gcd(wide a, wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(wide v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
}

// Reduces num/den and stores into out.
void assign_reduced(wide num, wide den, std::int64_t& out_num, std::int64_t& out_den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) {
        out_num = 0;
        out_den = 1;
        return;
    }
    wide g = wide_gcd(num, den);
    out_num = narrow(num / g);
    out_den = narrow(den / g);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    assign_reduced(num, den, num_, den_);
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }

    auto read_digits = [&](wide& acc, int& count) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            acc = acc * 10 + (text[pos] - '0');
            if (acc > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("rational overflow");
            ++count;
            ++pos;
        }
    };

    wide num = 0;
    wide den = 1;
    int int_digits = 0;
    read_digits(num, int_digits);

    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        int frac_digits = 0;
        wide frac = 0;
        read_digits(frac, frac_digits);
        if (frac_digits == 0 && int_digits == 0) return fail();
        for (int i = 0; i < frac_digits; ++i) {
            num *= 10;
            den *= 10;
            if (den > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("rational overflow");
        }
        num += frac;
    } else if (pos < text.size() && text[pos] == '/') {
        if (int_digits == 0) return fail();
        ++pos;
        int den_digits = 0;
        den = 0;
        read_digits(den, den_digits);
        if (den_digits == 0) return fail();
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    } else if (int_digits == 0) {
        return fail();
    }
    if (pos != text.size()) return fail();

    Rational r;
    assign_reduced(negative ? -num : num, den, r.num_, r.den_);
    return r;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (den_ == 1 && rhs.den_ == 1) {
        num_ = narrow(static_cast<wide>(num_) + rhs.num_);
        return *this;
    }
    wide n = static_cast<wide>(num_) * rhs.den_ + static_cast<wide>(rhs.num_) * den_;
    wide d = static_cast<wide>(den_) * rhs.den_;
    assign_reduced(n, d, num_, den_);
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    return *this += -rhs;
}

Rational& Rational::operator*=(const Rational& rhs) {
    if (den_ == 1 && rhs.den_ == 1) {
        num_ = narrow(static_cast<wide>(num_) * rhs.num_);
        return *this;
    }
    assign_reduced(static_cast<wide>(num_) * rhs.num_, static_cast<wide>(den_) * rhs.den_, num_, den_);
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
    assign_reduced(static_cast<wide>(num_) * rhs.den_, static_cast<wide>(den_) * rhs.num_, num_, den_);
    return *this;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = narrow(-static_cast<wide>(num_));
    r.den_ = den_;
    return r;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    wide l = static_cast<wide>(lhs.num_) * rhs.den_;
    wide r = static_cast<wide>(rhs.num_) * lhs.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace cogmap
