#include "cogmap/neutro.hpp"

#include <cctype>

namespace cogmap {

WeightParseError::WeightParseError(std::string text, std::string token)
    : std::invalid_argument("malformed weight '" + text + "': unexpected " +
                            (token.empty() ? std::string("end of input") : "'" + token + "'")),
      text_(std::move(text)),
      token_(std::move(token)) {}

namespace {

class WeightLexer {
public:
    explicit WeightLexer(std::string_view original) : original_(original) {
        for (char c : original)
            if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }

    [[nodiscard]] bool at_end() const { return pos_ == text_.size(); }
    [[nodiscard]] char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void advance() { ++pos_; }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    // Returns -1, +1, or 0 when no sign is present.
    int read_sign() {
        if (accept('-')) return -1;
        if (accept('+')) return 1;
        return 0;
    }

    bool read_scalar(Rational& out) {
        std::size_t start = pos_;
        auto is_scalar_char = [](char c) {
            return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '/';
        };
        while (!at_end() && is_scalar_char(text_[pos_])) ++pos_;
        if (pos_ == start) return false;
        std::string_view token(text_.data() + start, pos_ - start);
        try {
            out = Rational::parse(token);
        } catch (const std::invalid_argument&) {
            throw WeightParseError(std::string(original_), std::string(token));
        }
        return true;
    }

    [[noreturn]] void fail() const {
        std::size_t end = pos_;
        if (end < text_.size()) {
            ++end;
            while (end < text_.size() && text_[end] != '+' && text_[end] != '-') ++end;
        }
        throw WeightParseError(std::string(original_), text_.substr(pos_, end - pos_));
    }

    void expect_end() const {
        if (!at_end()) fail();
    }

private:
    std::string_view original_;
    std::string text_;
    std::size_t pos_ = 0;
};

void append_scalar(std::string& out, const Rational& magnitude) {
    out += magnitude.to_string();
}

}  // namespace

NeutroValue NeutroValue::parse(std::string_view text) {
    WeightLexer lex(text);
    const int lead = lex.read_sign();
    const Rational lead_sign = lead < 0 ? Rational{-1} : Rational{1};

    if (lex.accept('I')) {
        lex.expect_end();
        return {Rational{0}, lead_sign};
    }

    Rational first;
    if (!lex.read_scalar(first)) lex.fail();
    first *= lead_sign;

    if (lex.at_end()) return {first, Rational{0}};

    if (lex.accept('I')) {
        lex.expect_end();
        return {Rational{0}, first};
    }

    const int second_sign = lex.read_sign();
    if (second_sign == 0) lex.fail();
    Rational coeff{1};
    lex.read_scalar(coeff);
    if (!lex.accept('I')) lex.fail();
    lex.expect_end();
    return {first, second_sign < 0 ? -coeff : coeff};
}

std::string NeutroValue::to_string() const {
    std::string out;
    if (indet_.is_zero()) return real_.to_string();

    const Rational magnitude = indet_.sign() < 0 ? -indet_ : indet_;
    if (!real_.is_zero()) {
        out = real_.to_string();
        out += indet_.sign() < 0 ? '-' : '+';
    } else if (indet_.sign() < 0) {
        out = "-";
    }
    if (magnitude != Rational{1}) append_scalar(out, magnitude);
    out += 'I';
    return out;
}

NeutroValue& NeutroValue::operator+=(const NeutroValue& rhs) {
    real_ += rhs.real_;
    indet_ += rhs.indet_;
    return *this;
}

NeutroValue& NeutroValue::operator-=(const NeutroValue& rhs) {
    real_ -= rhs.real_;
    indet_ -= rhs.indet_;
    return *this;
}

NeutroValue& NeutroValue::operator*=(const NeutroValue& rhs) {
    // I^2 = I folds the b1*b2 term into the indeterminate part.
    Rational real = real_ * rhs.real_;
    Rational indet = real_ * rhs.indet_ + indet_ * rhs.real_ + indet_ * rhs.indet_;
    real_ = real;
    indet_ = indet;
    return *this;
}

}  // namespace cogmap
