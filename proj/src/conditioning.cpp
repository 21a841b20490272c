#include "mgf/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mgf/transform.hpp"
#include "overloaded.hpp"

namespace mgf {

namespace {

void check_dimensions(const DistributionSpec& dist, const TransformMatrix& a, const ExponentVector& k) {
    if (dimension(dist) != a.cols())
        fail(ErrorKind::DimensionMismatch, "distribution has dimension " + std::to_string(dimension(dist)) +
                                               " but the matrix has " + std::to_string(a.cols()) + " columns");
    if (k.size() != a.rows())
        fail(ErrorKind::DimensionMismatch, "target " + k.to_string() + " has length " + std::to_string(k.size()) +
                                               " but the matrix has " + std::to_string(a.rows()) + " rows");
}

void check_query(const DistributionSpec& dist, const TransformMatrix& a, const ConditionalQuery& query) {
    check_dimensions(dist, a, query.k);
    if (query.s.size() != a.cols())
        fail(ErrorKind::DimensionMismatch, "moment order " + query.s.to_string() + " needs one entry per column");
    if (query.support_bounds && query.support_bounds->size() != a.cols())
        fail(ErrorKind::DimensionMismatch, "support bounds need one entry per column");
}

ExponentVector componentwise_max(const ExponentVector& a, const ExponentVector& b) {
    std::vector<Exponent> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = std::max(a[i], b[i]);
    return ExponentVector(std::move(out));
}

// The pgf of X, truncated just enough for the box [0, k] under A. Poisson
// keeps t-degrees up to max(fiber bound, s) so s-th derivatives stay exact.
TruncatedSeries input_pgf(const DistributionSpec& dist, const TransformMatrix& a, const ExponentVector& k,
                          const ExponentVector& s, Mode mode, const std::optional<ExponentVector>& support_bounds) {
    validate(dist, mode);
    check_dimensions(dist, a, k);
    if (const auto* poisson = std::get_if<PoissonSpec>(&dist)) {
        ExponentVector reach = fiber_bounds(a, k, support_bounds);
        return poisson_pgf(poisson->lambdas, TruncationSpec{componentwise_max(reach, s)});
    }
    return build_pgf(dist, mode, std::nullopt);
}

// All-ones polynomial on the box [0, bounds].
TruncatedSeries box_indicator(const ExponentVector& bounds) {
    const std::size_t d = bounds.size();
    const TruncationSpec box{bounds};
    TruncatedSeries out = TruncatedSeries::constant(Mode::Exact, box, Coefficient::one(Mode::Exact));
    for (std::size_t r = 0; r < d; ++r) {
        std::vector<std::pair<ExponentVector, Coefficient>> terms;
        for (Exponent e = 0; e <= bounds[r]; ++e)
            terms.emplace_back(ExponentVector::unit(d, r, e), Coefficient::one(Mode::Exact));
        out = mul(out, TruncatedSeries::from_terms(Mode::Exact, box, terms));
    }
    return out;
}

void require_positive(const Coefficient& prob_y, const DistributionSpec& dist, const TransformMatrix& a,
                      const ExponentVector& k, const std::optional<ExponentVector>& support_bounds) {
    if (!prob_y.is_zero())
        return;
    if (fiber_support_size(dist, a, k, support_bounds) == 0)
        fail(ErrorKind::EmptyFiber, "no outcome with positive probability satisfies A j = " + k.to_string());
    fail(ErrorKind::ZeroProbability,
         "P(Y = " + k.to_string() + ") evaluates to zero although the fiber is nonempty (underflow)");
}

std::vector<Coefficient> ones(std::size_t n, Mode mode) {
    return std::vector<Coefficient>(n, Coefficient::one(mode));
}

mpz_class factorial(Exponent n) {
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

// Visits every j in N^d with sum j = total, lexicographically.
void for_each_composition(std::size_t d, Exponent total, const std::function<void(const ExponentVector&)>& visit) {
    std::vector<Exponent> parts(d, 0);
    std::function<void(std::size_t, Exponent)> recurse = [&](std::size_t r, Exponent left) {
        if (r + 1 == d) {
            parts[r] = left;
            visit(ExponentVector(parts));
            return;
        }
        for (Exponent e = 0; e <= left; ++e) {
            parts[r] = e;
            recurse(r + 1, left - e);
        }
    };
    recurse(0, total);
}

// multinomial(total; j) * prod p_r^{j_r}
Rational multinomial_weight(Exponent total, const ExponentVector& j, const std::vector<Rational>& probs) {
    mpz_class coeff = factorial(total);
    Rational weight = 1;
    for (std::size_t r = 0; r < j.size(); ++r) {
        coeff /= factorial(j[r]);
        Rational p_pow = power(Coefficient(probs[r]), j[r]).rational();
        weight *= p_pow;
    }
    return weight * Rational(coeff);
}

MomentResult in_mode(const Rational& value, const Rational& prob_y, Mode mode) {
    if (mode == Mode::Exact)
        return {Coefficient(value), Coefficient(prob_y)};
    return {Coefficient(value.get_d()), Coefficient(prob_y.get_d())};
}

} // namespace

TruncatedSeries pgf_of_y(const DistributionSpec& dist, const TransformMatrix& a, const ExponentVector& k, Mode mode,
                         const std::optional<ExponentVector>& support_bounds) {
    TruncatedSeries g = input_pgf(dist, a, k, ExponentVector(a.cols()), mode, support_bounds);
    return monomial_substitute(g, a, TruncationSpec{k}, support_bounds);
}

Exponent fiber_support_size(const DistributionSpec& dist, const TransformMatrix& a, const ExponentVector& k,
                            const std::optional<ExponentVector>& support_bounds) {
    check_dimensions(dist, a, k);
    TruncatedSeries indicator = std::visit(
        detail::overloaded{
            [&](const PoissonSpec&) { return box_indicator(fiber_bounds(a, k, support_bounds)); },
            [&](const MultinomialSpec& m) {
                std::vector<std::pair<ExponentVector, Coefficient>> terms;
                for_each_composition(a.cols(), m.trials, [&](const ExponentVector& j) {
                    for (std::size_t r = 0; r < j.size(); ++r)
                        if (j[r] > 0 && sgn(m.probs[r]) == 0)
                            return;
                    terms.emplace_back(j, Coefficient::one(Mode::Exact));
                });
                return TruncatedSeries::from_terms(Mode::Exact, TruncationSpec{ExponentVector(a.cols(), m.trials)},
                                                   terms);
            },
            [&](const TableSpec& t) {
                std::vector<Exponent> bounds(a.cols(), 0);
                std::vector<std::pair<ExponentVector, Coefficient>> terms;
                for (const auto& [j, p] : t.entries) {
                    for (std::size_t r = 0; r < bounds.size(); ++r)
                        bounds[r] = std::max(bounds[r], j[r]);
                    if (sgn(p) > 0)
                        terms.emplace_back(j, Coefficient::one(Mode::Exact));
                }
                return TruncatedSeries::from_terms(Mode::Exact, TruncationSpec{ExponentVector(std::move(bounds))},
                                                   terms);
            }},
        dist);
    TruncatedSeries counts = monomial_substitute(indicator, a, TruncationSpec{k}, support_bounds);
    return extract_coefficient(counts, k).rational().get_num().get_si();
}

ConditionalPmf conditional_pmf(const DistributionSpec& dist, const TransformMatrix& a, const ExponentVector& k,
                               Mode mode, const std::optional<ExponentVector>& support_bounds) {
    const std::size_t d = a.cols();
    TruncatedSeries g = input_pgf(dist, a, k, ExponentVector(d), mode, support_bounds);
    TruncatedSeries joint = joint_pgf(g, a, g.trunc(), TruncationSpec{k}, support_bounds);

    Coefficient prob_y = extract_coefficient(monomial_substitute(g, a, TruncationSpec{k}, support_bounds), k);
    require_positive(prob_y, dist, a, k, support_bounds);

    ConditionalPmf out;
    for (const auto& [e, c] : joint.terms())
        if (e.slice(d, a.rows()) == k)
            out.emplace(e.slice(0, d), c / prob_y);
    return out;
}

MomentResult conditional_factorial_moment(const DistributionSpec& dist, const TransformMatrix& a,
                                          const ConditionalQuery& query, Mode mode) {
    check_query(dist, a, query);
    const std::size_t d = a.cols();
    TruncatedSeries g = input_pgf(dist, a, query.k, query.s, mode, query.support_bounds);
    const TruncationSpec zbox{query.k};

    Coefficient prob_y = extract_coefficient(monomial_substitute(g, a, zbox, query.support_bounds), query.k);
    require_positive(prob_y, dist, a, query.k, query.support_bounds);

    // A complete input is a polynomial; a derivative above its degree in t_r
    // vanishes identically, so the moment is exactly zero.
    if (g.is_complete())
        for (std::size_t r = 0; r < d; ++r)
            if (query.s[r] > g.trunc().bounds[r])
                return {Coefficient::zero(mode), prob_y};

    TruncatedSeries joint = joint_pgf(g, a, g.trunc(), zbox, query.support_bounds);
    for (std::size_t r = 0; r < d; ++r)
        joint = partial_derivative(joint, r, query.s[r]);
    TruncatedSeries at_ones = evaluate_leading(joint, ones(d, mode));
    Coefficient numerator = extract_coefficient(at_ones, query.k);
    return {numerator / prob_y, prob_y};
}

MomentResult poisson_conditional_moment(const std::vector<double>& lambdas, const TransformMatrix& a,
                                        const ConditionalQuery& query) {
    const DistributionSpec dist = PoissonSpec{lambdas};
    check_query(dist, a, query);
    TruncatedSeries g_y = pgf_of_y(dist, a, query.k, Mode::Float, query.support_bounds);
    Coefficient prob_y = extract_coefficient(g_y, query.k);
    require_positive(prob_y, dist, a, query.k, query.support_bounds);

    std::optional<ExponentVector> shifted = query.k.minus(monomial_image(a, query.s));
    if (!shifted)
        return {Coefficient(0.0), prob_y};

    double prefactor = 1.0;
    for (std::size_t r = 0; r < lambdas.size(); ++r)
        prefactor *= std::pow(lambdas[r], static_cast<double>(query.s[r]));
    Coefficient numerator = Coefficient(prefactor) * extract_coefficient(g_y, *shifted);
    return {numerator / prob_y, prob_y};
}

MomentResult multinomial_conditional_moment(Exponent trials, const std::vector<Rational>& probs,
                                            const TransformMatrix& a, const ConditionalQuery& query, Mode mode) {
    const DistributionSpec dist = MultinomialSpec{trials, probs};
    validate(dist, mode);
    check_query(dist, a, query);
    const std::size_t d = a.cols();

    Rational prob_y = 0;
    for_each_composition(d, trials, [&](const ExponentVector& j) {
        if (monomial_image(a, j) == query.k)
            prob_y += multinomial_weight(trials, j, probs);
    });
    if (sgn(prob_y) == 0)
        fail(ErrorKind::EmptyFiber, "no outcome with positive probability satisfies A j = " + query.k.to_string());

    const Exponent order = query.s.total();
    if (order > trials)
        return in_mode(Rational(0), prob_y, mode);

    const Exponent rest = trials - order;
    Rational sum = 0;
    for_each_composition(d, rest, [&](const ExponentVector& j) {
        if (monomial_image(a, j + query.s) == query.k)
            sum += multinomial_weight(rest, j, probs);
    });

    Rational prefactor = Rational(factorial(trials)) / Rational(factorial(rest));
    for (std::size_t r = 0; r < d; ++r)
        prefactor *= power(Coefficient(probs[r]), query.s[r]).rational();
    return in_mode(prefactor * sum / prob_y, prob_y, mode);
}

std::optional<MomentResult> closed_form_conditional_moment(const DistributionSpec& dist, const TransformMatrix& a,
                                                           const ConditionalQuery& query, Mode mode) {
    if (const auto* poisson = std::get_if<PoissonSpec>(&dist))
        return poisson_conditional_moment(poisson->lambdas, a, query);
    if (const auto* multinomial = std::get_if<MultinomialSpec>(&dist))
        return multinomial_conditional_moment(multinomial->trials, multinomial->probs, a, query, mode);
    return std::nullopt;
}

} // namespace mgf
