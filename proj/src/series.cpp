#include "mgf/series.hpp"

#include <cmath>

namespace mgf {

namespace {

void require_compatible(const TruncatedSeries& s, const TruncatedSeries& t) {
    if (s.mode() != t.mode())
        fail(ErrorKind::ModeMismatch, "series use different coefficient modes");
    if (s.num_vars() != t.num_vars())
        fail(ErrorKind::DimensionMismatch, "series have " + std::to_string(s.num_vars()) + " and " +
                                               std::to_string(t.num_vars()) + " variables");
    if (!(s.trunc() == t.trunc()))
        fail(ErrorKind::DimensionMismatch, "series have different truncation boxes " +
                                               s.trunc().bounds.to_string() + " and " +
                                               t.trunc().bounds.to_string());
}

void require_mode(const TruncatedSeries& s, const Coefficient& c) {
    if (s.mode() != c.mode())
        fail(ErrorKind::ModeMismatch, "scalar mode differs from series mode");
}

} // namespace

TruncatedSeries::TruncatedSeries(Mode mode, TruncationSpec trunc, bool complete)
    : mode_(mode), trunc_(std::move(trunc)), complete_(complete) {}

TruncatedSeries TruncatedSeries::constant(Mode mode, TruncationSpec trunc, const Coefficient& c) {
    return monomial(mode, trunc, ExponentVector(trunc.size()), c);
}

TruncatedSeries TruncatedSeries::monomial(Mode mode, TruncationSpec trunc, const ExponentVector& e,
                                          const Coefficient& c) {
    return from_terms(mode, std::move(trunc), {{e, c}});
}

TruncatedSeries TruncatedSeries::from_terms(Mode mode, TruncationSpec trunc,
                                            const std::vector<std::pair<ExponentVector, Coefficient>>& terms,
                                            bool complete) {
    SeriesBuilder builder(mode, trunc);
    for (const auto& [e, c] : terms) {
        if (c.mode() != mode)
            fail(ErrorKind::ModeMismatch, "term coefficient mode differs from series mode");
        if (!builder.add(e, c))
            fail(ErrorKind::OutOfTruncation,
                 "term " + e.to_string() + " lies outside the box " + trunc.bounds.to_string());
    }
    if (!complete)
        builder.mark_incomplete();
    return std::move(builder).finish();
}

Coefficient TruncatedSeries::stored(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coefficient::zero(mode_) : it->second;
}

TruncatedSeries TruncatedSeries::support_indicator() const {
    TruncatedSeries out(Mode::Exact, trunc_, complete_);
    for (const auto& [e, c] : terms_)
        out.terms_.emplace_hint(out.terms_.end(), e, Coefficient::one(Mode::Exact));
    return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.mode_ == b.mode_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
}

SeriesBuilder::SeriesBuilder(Mode mode, TruncationSpec trunc) : series_(mode, std::move(trunc)) {}

bool SeriesBuilder::add(const ExponentVector& e, const Coefficient& c) {
    if (e.size() != series_.num_vars())
        fail(ErrorKind::DimensionMismatch, "term " + e.to_string() + " has the wrong number of variables");
    if (!series_.trunc_.admits(e)) {
        if (!c.is_zero())
            complete_ = false;
        return false;
    }
    if (c.is_zero())
        return true;
    auto [it, inserted] = series_.terms_.try_emplace(e, c);
    if (!inserted)
        it->second += c;
    return true;
}

TruncatedSeries SeriesBuilder::finish() && {
    std::erase_if(series_.terms_, [](const auto& term) { return term.second.is_negligible(); });
    series_.complete_ = complete_;
    return std::move(series_);
}

TruncatedSeries linear_combine(const Coefficient& alpha, const TruncatedSeries& s,
                               const Coefficient& beta, const TruncatedSeries& t) {
    require_compatible(s, t);
    require_mode(s, alpha);
    require_mode(t, beta);
    SeriesBuilder out(s.mode(), s.trunc());
    if (!alpha.is_zero())
        for (const auto& [e, c] : s.terms())
            out.add(e, alpha * c);
    if (!beta.is_zero())
        for (const auto& [e, c] : t.terms())
            out.add(e, beta * c);
    // A zero multiplier erases any unknown tail of its operand.
    bool s_matters = !alpha.is_zero() && !s.is_complete();
    bool t_matters = !beta.is_zero() && !t.is_complete();
    if (s_matters || t_matters)
        out.mark_incomplete();
    return std::move(out).finish();
}

TruncatedSeries scale(const Coefficient& alpha, const TruncatedSeries& s) {
    require_mode(s, alpha);
    SeriesBuilder out(s.mode(), s.trunc());
    if (!alpha.is_zero()) {
        for (const auto& [e, c] : s.terms())
            out.add(e, alpha * c);
        if (!s.is_complete())
            out.mark_incomplete();
    }
    return std::move(out).finish();
}

TruncatedSeries mul(const TruncatedSeries& s, const TruncatedSeries& t) {
    require_compatible(s, t);
    SeriesBuilder out(s.mode(), s.trunc());
    const auto& bounds = s.trunc().bounds;
    const std::size_t n = s.num_vars();
    std::vector<Exponent> sum(n);
    for (const auto& [es, cs] : s.terms()) {
        for (const auto& [et, ct] : t.terms()) {
            bool inside = true;
            for (std::size_t i = 0; i < n; ++i) {
                sum[i] = checked_add(es[i], et[i]);
                if (sum[i] > bounds[i])
                    inside = false;
            }
            if (!inside) {
                out.mark_incomplete();
                continue;
            }
            out.add(ExponentVector(sum), cs * ct);
        }
    }
    bool s_zero = s.empty() && s.is_complete();
    bool t_zero = t.empty() && t.is_complete();
    if (!(s_zero || t_zero) && (!s.is_complete() || !t.is_complete()))
        out.mark_incomplete();
    return std::move(out).finish();
}

FactoredExp exp_truncated_factored(const TruncatedSeries& s) {
    const Mode mode = s.mode();
    const ExponentVector origin(s.num_vars());
    Coefficient constant = s.stored(origin);

    SeriesBuilder rest_builder(mode, s.trunc());
    for (const auto& [e, c] : s.terms())
        if (!e.is_zero())
            rest_builder.add(e, c);
    if (!s.is_complete())
        rest_builder.mark_incomplete();
    TruncatedSeries rest = std::move(rest_builder).finish();

    // rest has no constant term, so rest^n vanishes in the box once n
    // exceeds the total degree cap.
    const Exponent max_power = s.trunc().bounds.total();
    TruncatedSeries sum = TruncatedSeries::constant(mode, s.trunc(), Coefficient::one(mode));
    TruncatedSeries power = sum;
    for (Exponent n = 1; n <= max_power; ++n) {
        power = scale(Coefficient::one(mode) / Coefficient::integer(mode, n), mul(power, rest));
        if (power.empty())
            break;
        sum = sum + power;
    }
    if (!rest.empty()) {
        // exp of a non-polynomial-constant series is an infinite series.
        SeriesBuilder out(mode, s.trunc());
        for (const auto& [e, c] : sum.terms())
            out.add(e, c);
        out.mark_incomplete();
        sum = std::move(out).finish();
    }
    return {std::move(constant), std::move(sum)};
}

TruncatedSeries exp_truncated(const TruncatedSeries& s) {
    FactoredExp parts = exp_truncated_factored(s);
    if (parts.constant.is_zero())
        return std::move(parts.series);
    if (s.mode() == Mode::Exact)
        fail(ErrorKind::NonzeroConstantTerm,
             "exp of an exact series with nonzero constant term " + parts.constant.to_string() +
                 " is not rational; use exp_truncated_factored or float mode");
    return scale(Coefficient(std::exp(parts.constant.to_double())), parts.series);
}

TruncatedSeries partial_derivative(const TruncatedSeries& s, std::size_t var, Exponent order) {
    if (var >= s.num_vars())
        fail(ErrorKind::DimensionMismatch, "derivative variable " + std::to_string(var) +
                                               " out of range for " + std::to_string(s.num_vars()) +
                                               " variables");
    if (order < 0)
        fail(ErrorKind::InvalidArgument, "derivative order must be nonnegative");
    if (order == 0)
        return s;

    ExponentVector bounds = s.trunc().bounds;
    const Exponent cap = bounds[var];
    if (order > cap && !s.is_complete())
        fail(ErrorKind::InsufficientTruncation,
             "derivative of order " + std::to_string(order) + " exceeds the retained degree " +
                 std::to_string(cap) + " of variable " + std::to_string(var));
    bounds.set(var, order > cap ? 0 : cap - order);

    SeriesBuilder out(s.mode(), TruncationSpec{bounds});
    const ExponentVector shift = ExponentVector::unit(s.num_vars(), var, order);
    for (const auto& [e, c] : s.terms()) {
        if (e[var] < order)
            continue;
        Coefficient factor = Coefficient::one(s.mode());
        for (Exponent i = 0; i < order; ++i)
            factor *= Coefficient::integer(s.mode(), e[var] - i);
        out.add(*e.minus(shift), factor * c);
    }
    if (!s.is_complete())
        out.mark_incomplete();
    return std::move(out).finish();
}

Coefficient extract_coefficient(const TruncatedSeries& s, const ExponentVector& e) {
    if (e.size() != s.num_vars())
        fail(ErrorKind::DimensionMismatch, "exponent " + e.to_string() + " has the wrong number of variables");
    if (!s.trunc().admits(e))
        fail(ErrorKind::OutOfTruncation, "coefficient of " + e.to_string() + " lies outside the box " +
                                             s.trunc().bounds.to_string());
    return s.stored(e);
}

Coefficient evaluate(const TruncatedSeries& s, const std::vector<Coefficient>& point) {
    if (point.size() != s.num_vars())
        fail(ErrorKind::DimensionMismatch, "evaluation point has the wrong number of coordinates");
    Coefficient total = Coefficient::zero(s.mode());
    for (const auto& [e, c] : s.terms()) {
        Coefficient term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0)
                term *= power(point[i], e[i]);
        total += term;
    }
    return total;
}

TruncatedSeries evaluate_leading(const TruncatedSeries& s, const std::vector<Coefficient>& point) {
    const std::size_t lead = point.size();
    if (lead > s.num_vars())
        fail(ErrorKind::DimensionMismatch, "more evaluation coordinates than variables");
    const std::size_t rest = s.num_vars() - lead;
    SeriesBuilder out(s.mode(), TruncationSpec{s.trunc().bounds.slice(lead, rest)});
    for (const auto& [e, c] : s.terms()) {
        Coefficient term = c;
        for (std::size_t i = 0; i < lead; ++i)
            if (e[i] != 0)
                term *= power(point[i], e[i]);
        out.add(e.slice(lead, rest), term);
    }
    if (!s.is_complete())
        out.mark_incomplete();
    return std::move(out).finish();
}

Coefficient coefficient_sum(const TruncatedSeries& s) {
    Coefficient total = Coefficient::zero(s.mode());
    for (const auto& [e, c] : s.terms())
        total += c;
    return total;
}

std::vector<std::pair<ExponentVector, std::string>> serialize(const TruncatedSeries& s) {
    std::vector<std::pair<ExponentVector, std::string>> out;
    out.reserve(s.size());
    for (const auto& [e, c] : s.terms())
        out.emplace_back(e, c.to_string());
    return out;
}

std::string to_string(const TruncatedSeries& s) {
    if (s.empty())
        return "0";
    std::string out;
    for (const auto& [e, c] : s.terms()) {
        if (!out.empty())
            out += " + ";
        out += c.to_string();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            out += "*x" + std::to_string(i + 1);
            if (e[i] != 1)
                out += "^" + std::to_string(e[i]);
        }
    }
    return out;
}

} // namespace mgf
