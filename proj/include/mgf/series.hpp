#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mgf/coefficient.hpp"
#include "mgf/core.hpp"

namespace mgf {

/// Sparse multivariate power series with hard per-variable degree caps.
///
/// Every stored coefficient equals the corresponding coefficient of the
/// underlying formal series: truncation only ever removes terms outside the
/// box. Zero coefficients are never stored (float coefficients below
/// kFloatPurge count as zero).
///
/// A series is *complete* when it is known to hold every nonzero term of
/// the formal series, i.e. it is a polynomial that fits its box.
class TruncatedSeries {
public:
    using TermMap = std::map<ExponentVector, Coefficient>;

    TruncatedSeries(Mode mode, TruncationSpec trunc, bool complete = true);

    static TruncatedSeries constant(Mode mode, TruncationSpec trunc, const Coefficient& c);
    static TruncatedSeries monomial(Mode mode, TruncationSpec trunc, const ExponentVector& e,
                                    const Coefficient& c);
    // Terms with equal exponents accumulate. A term outside the box raises
    // OutOfTruncation.
    static TruncatedSeries from_terms(Mode mode, TruncationSpec trunc,
                                      const std::vector<std::pair<ExponentVector, Coefficient>>& terms,
                                      bool complete = true);

    Mode mode() const noexcept { return mode_; }
    std::size_t num_vars() const noexcept { return trunc_.size(); }
    const TruncationSpec& trunc() const noexcept { return trunc_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    bool is_complete() const noexcept { return complete_; }

    // Stored coefficient or zero; no truncation check (see extract_coefficient).
    Coefficient stored(const ExponentVector& e) const;

    // Same terms, every coefficient replaced by exact 1.
    TruncatedSeries support_indicator() const;

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

private:
    friend class SeriesBuilder;

    Mode mode_;
    TruncationSpec trunc_;
    TermMap terms_;
    bool complete_;
};

// Accumulates terms into a series, discarding anything outside the box and
// purging cancellations on finish().
class SeriesBuilder {
public:
    SeriesBuilder(Mode mode, TruncationSpec trunc);

    // Returns false (and records the loss of completeness) when e lies
    // outside the box.
    bool add(const ExponentVector& e, const Coefficient& c);
    void mark_incomplete() noexcept { complete_ = false; }

    TruncatedSeries finish() &&;

private:
    TruncatedSeries series_;
    bool complete_ = true;
};

TruncatedSeries linear_combine(const Coefficient& alpha, const TruncatedSeries& s,
                               const Coefficient& beta, const TruncatedSeries& t);

TruncatedSeries mul(const TruncatedSeries& s, const TruncatedSeries& t);

TruncatedSeries scale(const Coefficient& alpha, const TruncatedSeries& s);

// exp of a series with zero constant term in exact mode; in float mode a
// nonzero constant term c contributes the factor exp(c).
TruncatedSeries exp_truncated(const TruncatedSeries& s);

// exp(s) = exp(constant) * series, with series = exp(s - constant). Works in
// either mode; the caller decides what to do with the transcendental factor.
struct FactoredExp {
    Coefficient constant;
    TruncatedSeries series;
};
FactoredExp exp_truncated_factored(const TruncatedSeries& s);

// d^order/d(var)^order. The result's cap in var shrinks by order. An order
// beyond the cap of an incomplete series raises InsufficientTruncation: no
// retained coefficient would be trustworthy.
TruncatedSeries partial_derivative(const TruncatedSeries& s, std::size_t var, Exponent order);

Coefficient extract_coefficient(const TruncatedSeries& s, const ExponentVector& e);

Coefficient evaluate(const TruncatedSeries& s, const std::vector<Coefficient>& point);

// Substitutes values for the leading point.size() variables and returns a
// series in the remaining ones. Exact only when no term that would land in
// the remaining box was truncated away in the substituted variables.
TruncatedSeries evaluate_leading(const TruncatedSeries& s, const std::vector<Coefficient>& point);

Coefficient coefficient_sum(const TruncatedSeries& s);

// Lexicographic (exponent, coefficient) pairs; coefficients as "num/den"
// or shortest round-trip decimal.
std::vector<std::pair<ExponentVector, std::string>> serialize(const TruncatedSeries& s);

std::string to_string(const TruncatedSeries& s);

inline TruncatedSeries operator+(const TruncatedSeries& s, const TruncatedSeries& t) {
    return linear_combine(Coefficient::one(s.mode()), s, Coefficient::one(t.mode()), t);
}
inline TruncatedSeries operator-(const TruncatedSeries& s, const TruncatedSeries& t) {
    return linear_combine(Coefficient::one(s.mode()), s, -Coefficient::one(t.mode()), t);
}
inline TruncatedSeries operator*(const TruncatedSeries& s, const TruncatedSeries& t) { return mul(s, t); }

} // namespace mgf
