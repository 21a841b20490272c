#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "mgf/error.hpp"

namespace mgf {

using Rational = mpq_class;

enum class Mode { Exact, Float };

std::string_view to_string(Mode mode) noexcept;

// Relative tolerance for float-mode comparisons.
inline constexpr double kFloatRelTol = 1e-9;
// Float coefficients below this magnitude are treated as underflowed and
// are not stored.
inline constexpr double kFloatPurge = 1e-300;

/// A series coefficient: exact rational or double, never mixed.
///
/// Binary arithmetic between an exact and a float coefficient raises
/// ErrorKind::ModeMismatch rather than silently promoting.
class Coefficient {
public:
    Coefficient() : value_(Rational(0)) {}
    explicit Coefficient(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }
    explicit Coefficient(double x) : value_(x) {}

    static Coefficient zero(Mode mode);
    static Coefficient one(Mode mode);
    static Coefficient integer(Mode mode, long n);

    Mode mode() const noexcept { return std::holds_alternative<Rational>(value_) ? Mode::Exact : Mode::Float; }
    bool is_exact() const noexcept { return mode() == Mode::Exact; }

    bool is_zero() const;
    // True when a series may drop this coefficient from storage.
    bool is_negligible() const;
    int sign() const;

    const Rational& rational() const;
    double to_double() const;
    Coefficient to_mode(Mode mode) const;

    Coefficient operator-() const;
    Coefficient& operator+=(const Coefficient& other);
    Coefficient& operator-=(const Coefficient& other);
    Coefficient& operator*=(const Coefficient& other);
    Coefficient& operator/=(const Coefficient& other);

    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
    friend Coefficient operator/(Coefficient a, const Coefficient& b) { return a /= b; }

    // Exact identity of mode and value (bitwise for doubles).
    friend bool operator==(const Coefficient& a, const Coefficient& b);

    // "num/den" in exact mode, shortest round-trip decimal in float mode.
    std::string to_string() const;
    // Float rendered with the given number of significant digits; exact
    // mode ignores the precision.
    std::string to_string(int significant_digits) const;

private:
    std::variant<Rational, double> value_;
};

// base^exponent by repeated squaring; exponent >= 0.
Coefficient power(const Coefficient& base, long exponent);

// Exact mode compares for equality. Float mode accepts
// |a - b| <= rel * max(|a|, |b|) + abs.
bool approx_equal(const Coefficient& a, const Coefficient& b, double rel = kFloatRelTol, double abs = 0.0);

// Parses "p/q", integers, and decimal literals ("0.125", "2.5e-3") into an
// exact rational by literal decimal expansion.
Rational parse_rational(std::string_view text);

// Exact rational value of a double (every finite double is dyadic).
Rational rational_from_double(double x);

std::string rational_to_string(const Rational& q);

} // namespace mgf
