#include "mgf/coefficient.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace mgf {

std::string_view to_string(Mode mode) noexcept {
    return mode == Mode::Exact ? "exact" : "float";
}

namespace {

[[noreturn]] void mode_mismatch() {
    fail(ErrorKind::ModeMismatch, "cannot combine exact and float coefficients");
}

} // namespace

Coefficient Coefficient::zero(Mode mode) {
    return mode == Mode::Exact ? Coefficient(Rational(0)) : Coefficient(0.0);
}

Coefficient Coefficient::one(Mode mode) {
    return mode == Mode::Exact ? Coefficient(Rational(1)) : Coefficient(1.0);
}

Coefficient Coefficient::integer(Mode mode, long n) {
    return mode == Mode::Exact ? Coefficient(Rational(n)) : Coefficient(static_cast<double>(n));
}

bool Coefficient::is_zero() const {
    if (const auto* q = std::get_if<Rational>(&value_))
        return sgn(*q) == 0;
    return std::get<double>(value_) == 0.0;
}

bool Coefficient::is_negligible() const {
    if (const auto* q = std::get_if<Rational>(&value_))
        return sgn(*q) == 0;
    return std::fabs(std::get<double>(value_)) < kFloatPurge;
}

int Coefficient::sign() const {
    if (const auto* q = std::get_if<Rational>(&value_))
        return sgn(*q);
    double x = std::get<double>(value_);
    return (x > 0) - (x < 0);
}

const Rational& Coefficient::rational() const {
    if (const auto* q = std::get_if<Rational>(&value_))
        return *q;
    fail(ErrorKind::ModeMismatch, "float coefficient has no exact rational value");
}

double Coefficient::to_double() const {
    if (const auto* q = std::get_if<Rational>(&value_))
        return q->get_d();
    return std::get<double>(value_);
}

Coefficient Coefficient::to_mode(Mode mode) const {
    if (mode == this->mode())
        return *this;
    if (mode == Mode::Float)
        return Coefficient(to_double());
    return Coefficient(rational_from_double(std::get<double>(value_)));
}

Coefficient Coefficient::operator-() const {
    if (const auto* q = std::get_if<Rational>(&value_))
        return Coefficient(Rational(-*q));
    return Coefficient(-std::get<double>(value_));
}

#define MGF_COEFFICIENT_OP(op)                                                          \
    Coefficient& Coefficient::operator op(const Coefficient & other) {                  \
        if (auto* q = std::get_if<Rational>(&value_)) {                                 \
            const auto* r = std::get_if<Rational>(&other.value_);                       \
            if (!r)                                                                     \
                mode_mismatch();                                                        \
            *q op * r;                                                                  \
        } else {                                                                        \
            const auto* r = std::get_if<double>(&other.value_);                         \
            if (!r)                                                                     \
                mode_mismatch();                                                        \
            std::get<double>(value_) op * r;                                            \
        }                                                                               \
        return *this;                                                                   \
    }

MGF_COEFFICIENT_OP(+=)
MGF_COEFFICIENT_OP(-=)
MGF_COEFFICIENT_OP(*=)
#undef MGF_COEFFICIENT_OP

Coefficient& Coefficient::operator/=(const Coefficient& other) {
    if (other.is_zero())
        fail(ErrorKind::InvalidArgument, "division by zero coefficient");
    if (auto* q = std::get_if<Rational>(&value_)) {
        const auto* r = std::get_if<Rational>(&other.value_);
        if (!r)
            mode_mismatch();
        *q /= *r;
    } else {
        const auto* r = std::get_if<double>(&other.value_);
        if (!r)
            mode_mismatch();
        std::get<double>(value_) /= *r;
    }
    return *this;
}

bool operator==(const Coefficient& a, const Coefficient& b) {
    if (a.mode() != b.mode())
        return false;
    if (a.is_exact())
        return a.rational() == b.rational();
    return std::get<double>(a.value_) == std::get<double>(b.value_);
}

std::string Coefficient::to_string() const {
    if (const auto* q = std::get_if<Rational>(&value_))
        return rational_to_string(*q);
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), std::get<double>(value_));
    return std::string(buf.data(), end);
}

std::string Coefficient::to_string(int significant_digits) const {
    if (is_exact())
        return to_string();
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*g", significant_digits, std::get<double>(value_));
    return buf.data();
}

Coefficient power(const Coefficient& base, long exponent) {
    if (exponent < 0)
        fail(ErrorKind::InvalidArgument, "negative power of a coefficient");
    Coefficient result = Coefficient::one(base.mode());
    Coefficient square = base;
    while (exponent > 0) {
        if (exponent & 1)
            result *= square;
        exponent >>= 1;
        if (exponent > 0)
            square *= square;
    }
    return result;
}

bool approx_equal(const Coefficient& a, const Coefficient& b, double rel, double abs) {
    if (a.mode() != b.mode())
        mode_mismatch();
    if (a.is_exact())
        return a == b;
    double x = a.to_double();
    double y = b.to_double();
    return std::fabs(x - y) <= rel * std::max(std::fabs(x), std::fabs(y)) + abs;
}

std::string rational_to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x))
        fail(ErrorKind::InvalidArgument, "non-finite value has no rational form");
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

[[noreturn]] void bad_number(std::string_view text) {
    fail(ErrorKind::InvalidArgument, "not a rational or decimal literal: '" + std::string(text) + "'");
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    if (s.empty())
        bad_number(text);

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (sgn(den) == 0)
            fail(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
        Rational out = num / den;
        out.canonicalize();
        return out;
    }

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = s.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6)
            bad_number(text);
        exponent = std::stol(std::string(exp_text));
        if (exp_negative)
            exponent = -exponent;
        s = s.substr(0, e);
    }

    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            bad_number(text);
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        if (!all_digits(s))
            bad_number(text);
        digits = std::string(s);
    }
    if (digits.empty())
        digits = "0";

    mpz_class mantissa(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational out = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

} // namespace mgf
