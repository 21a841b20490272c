#include "mgf/distributions.hpp"

#include <cmath>
#include <string>

#include "overloaded.hpp"

namespace mgf {

namespace {

using detail::overloaded;

[[noreturn]] void invalid(const std::string& message) {
    fail(ErrorKind::InvalidDistribution, message);
}

void check_mass(const Rational& mass, Mode mode, std::string_view what) {
    bool ok = mode == Mode::Exact ? mass == 1 : std::fabs(mass.get_d() - 1.0) <= kMassTolerance;
    if (!ok)
        invalid(std::string(what) + " sum to " + rational_to_string(mass) + ", not 1");
}

void validate_poisson(const PoissonSpec& spec) {
    if (spec.lambdas.empty())
        invalid("Poisson distribution needs at least one rate");
    for (double lambda : spec.lambdas)
        if (!(lambda > 0) || !std::isfinite(lambda))
            invalid("Poisson rates must be positive and finite, got " + std::to_string(lambda));
}

void validate_multinomial(const MultinomialSpec& spec, Mode mode) {
    if (spec.probs.empty())
        invalid("multinomial distribution needs at least one probability");
    if (spec.trials < 0)
        invalid("multinomial trial count must be nonnegative");
    Rational mass = 0;
    for (const auto& p : spec.probs) {
        if (p < 0 || p > 1)
            invalid("multinomial probability " + rational_to_string(p) + " is outside [0, 1]");
        mass += p;
    }
    check_mass(mass, mode, "multinomial probabilities");
}

void validate_table(const TableSpec& spec, Mode mode) {
    if (spec.entries.empty())
        invalid("pmf table is empty");
    const std::size_t d = spec.entries.begin()->first.size();
    if (d == 0)
        invalid("pmf table outcomes must have at least one coordinate");
    Rational mass = 0;
    for (const auto& [j, p] : spec.entries) {
        if (j.size() != d)
            fail(ErrorKind::DimensionMismatch, "pmf table outcome " + j.to_string() + " has length " +
                                                   std::to_string(j.size()) + ", expected " + std::to_string(d));
        if (p < 0)
            invalid("pmf table entry " + j.to_string() + " has negative probability " + rational_to_string(p));
        mass += p;
    }
    check_mass(mass, mode, "pmf table probabilities");
}

Coefficient as_coefficient(const Rational& q, Mode mode) {
    return mode == Mode::Exact ? Coefficient(q) : Coefficient(q.get_d());
}

} // namespace

std::string_view family_name(const DistributionSpec& dist) {
    return std::visit(overloaded{[](const PoissonSpec&) { return std::string_view("poisson"); },
                                 [](const MultinomialSpec&) { return std::string_view("multinomial"); },
                                 [](const TableSpec&) { return std::string_view("table"); }},
                      dist);
}

std::size_t dimension(const DistributionSpec& dist) {
    return std::visit(
        overloaded{[](const PoissonSpec& s) { return s.lambdas.size(); },
                   [](const MultinomialSpec& s) { return s.probs.size(); },
                   [](const TableSpec& s) { return s.entries.empty() ? 0 : s.entries.begin()->first.size(); }},
        dist);
}

Mode natural_mode(const DistributionSpec& dist) {
    return std::holds_alternative<PoissonSpec>(dist) ? Mode::Float : Mode::Exact;
}

void validate(const DistributionSpec& dist, Mode mode) {
    std::visit(overloaded{[&](const PoissonSpec& s) {
                              validate_poisson(s);
                              if (mode == Mode::Exact)
                                  fail(ErrorKind::ModeMismatch,
                                       "exact mode is unavailable for Poisson distributions: the pmf "
                                       "exp(-lambda) lambda^j / j! is not rational");
                          },
                          [&](const MultinomialSpec& s) { validate_multinomial(s, mode); },
                          [&](const TableSpec& s) { validate_table(s, mode); }},
               dist);
}

ExponentVector default_poisson_bounds(const std::vector<double>& lambdas) {
    std::vector<Exponent> bounds;
    bounds.reserve(lambdas.size());
    for (double lambda : lambdas)
        bounds.push_back(static_cast<Exponent>(std::ceil(lambda + 10.0 * std::sqrt(lambda) + 20.0)));
    return ExponentVector(std::move(bounds));
}

double poisson_tail_bound(const std::vector<double>& lambdas, const ExponentVector& bounds) {
    if (lambdas.size() != bounds.size())
        fail(ErrorKind::DimensionMismatch, "one bound per Poisson rate is required");
    double total = 0.0;
    for (std::size_t r = 0; r < lambdas.size(); ++r) {
        const double lambda = lambdas[r];
        // Sum the pmf upward from bounds_r + 1 until terms stop mattering.
        Exponent j = bounds[r] + 1;
        double log_term = -lambda + static_cast<double>(j) * std::log(lambda) - std::lgamma(static_cast<double>(j) + 1);
        double tail = 0.0;
        for (int steps = 0; steps < 100000; ++steps, ++j) {
            double term = std::exp(log_term);
            tail += term;
            if (static_cast<double>(j) > lambda && term <= tail * 1e-17)
                break;
            log_term += std::log(lambda) - std::log(static_cast<double>(j + 1));
        }
        total += tail;
    }
    return total;
}

TruncatedSeries poisson_pgf(const std::vector<double>& lambdas, const TruncationSpec& ttrunc) {
    validate_poisson(PoissonSpec{lambdas});
    if (ttrunc.size() != lambdas.size())
        fail(ErrorKind::DimensionMismatch, "Poisson truncation box needs one bound per rate");
    const std::size_t d = lambdas.size();
    TruncatedSeries product = TruncatedSeries::constant(Mode::Float, ttrunc, Coefficient(1.0));
    for (std::size_t r = 0; r < d; ++r) {
        // lambda_r (t_r - 1)
        // A zero cap drops the linear term and leaves exp(-lambda_r).
        SeriesBuilder exponent(Mode::Float, ttrunc);
        exponent.add(ExponentVector(d), Coefficient(-lambdas[r]));
        exponent.add(ExponentVector::unit(d, r), Coefficient(lambdas[r]));
        product = mul(product, exp_truncated(std::move(exponent).finish()));
    }
    return product;
}

TruncatedSeries multinomial_pgf(Exponent trials, const std::vector<Rational>& probs, Mode mode) {
    validate_multinomial(MultinomialSpec{trials, probs}, mode);
    const std::size_t d = probs.size();
    const TruncationSpec box{ExponentVector(d, trials)};
    if (trials == 0)
        return TruncatedSeries::constant(mode, box, Coefficient::one(mode));

    std::vector<std::pair<ExponentVector, Coefficient>> linear;
    for (std::size_t r = 0; r < d; ++r)
        linear.emplace_back(ExponentVector::unit(d, r), as_coefficient(probs[r], mode));
    TruncatedSeries base = TruncatedSeries::from_terms(mode, box, linear);

    TruncatedSeries result = TruncatedSeries::constant(mode, box, Coefficient::one(mode));
    for (Exponent n = trials; n > 0; n >>= 1) {
        if (n & 1)
            result = mul(result, base);
        if (n > 1)
            base = mul(base, base);
    }
    return result;
}

TruncatedSeries table_pgf(const std::map<ExponentVector, Rational>& entries, Mode mode) {
    validate_table(TableSpec{entries}, mode);
    const std::size_t d = entries.begin()->first.size();
    std::vector<Exponent> bounds(d, 0);
    std::vector<std::pair<ExponentVector, Coefficient>> terms;
    for (const auto& [j, p] : entries) {
        for (std::size_t r = 0; r < d; ++r)
            bounds[r] = std::max(bounds[r], j[r]);
        terms.emplace_back(j, as_coefficient(p, mode));
    }
    return TruncatedSeries::from_terms(mode, TruncationSpec{ExponentVector(std::move(bounds))}, terms);
}

TruncatedSeries build_pgf(const DistributionSpec& dist, Mode mode, const std::optional<TruncationSpec>& ttrunc) {
    validate(dist, mode);
    return std::visit(overloaded{[&](const PoissonSpec& s) {
                                     return poisson_pgf(s.lambdas,
                                                        ttrunc ? *ttrunc
                                                               : TruncationSpec{default_poisson_bounds(s.lambdas)});
                                 },
                                 [&](const MultinomialSpec& s) { return multinomial_pgf(s.trials, s.probs, mode); },
                                 [&](const TableSpec& s) { return table_pgf(s.entries, mode); }},
                      dist);
}

} // namespace mgf
