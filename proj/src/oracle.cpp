#include "mgf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mgf::oracle {

namespace {

constexpr Exponent kNoCap = std::numeric_limits<Exponent>::max();

struct FiberSearch {
    const TransformMatrix& a;
    std::vector<Exponent> caps;
    std::vector<Exponent> residual;
    std::vector<Exponent> point;
    std::vector<ExponentVector> out;

    void descend(std::size_t r) {
        if (r == a.cols()) {
            if (std::all_of(residual.begin(), residual.end(), [](Exponent x) { return x == 0; }))
                out.emplace_back(point);
            return;
        }
        Exponent limit = caps[r];
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (a(i, r) > 0)
                limit = std::min(limit, residual[i] / a(i, r));
        for (Exponent v = 0; v <= limit; ++v) {
            point[r] = v;
            for (std::size_t i = 0; i < a.rows(); ++i)
                residual[i] -= a(i, r) * v;
            descend(r + 1);
            for (std::size_t i = 0; i < a.rows(); ++i)
                residual[i] += a(i, r) * v;
        }
        point[r] = 0;
    }
};

double log_factorial(Exponent n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

Coefficient falling_factorial(Exponent n, Exponent order, Mode mode) {
    Coefficient out = Coefficient::one(mode);
    for (Exponent i = 0; i < order; ++i)
        out *= Coefficient::integer(mode, n - i);
    return out;
}

// Caps implied by the distribution itself, tightened by the query's.
std::optional<ExponentVector> effective_caps(const DistributionSpec& dist,
                                             const std::optional<ExponentVector>& requested) {
    std::optional<ExponentVector> own;
    if (const auto* m = std::get_if<MultinomialSpec>(&dist)) {
        own = ExponentVector(m->probs.size(), m->trials);
    } else if (const auto* t = std::get_if<TableSpec>(&dist)) {
        std::vector<Exponent> caps(dimension(dist), 0);
        for (const auto& [j, p] : t->entries)
            for (std::size_t r = 0; r < caps.size(); ++r)
                caps[r] = std::max(caps[r], j[r]);
        own = ExponentVector(std::move(caps));
    }
    if (!own)
        return requested;
    if (!requested)
        return own;
    std::vector<Exponent> caps(own->size());
    for (std::size_t r = 0; r < caps.size(); ++r)
        caps[r] = std::min((*own)[r], (*requested)[r]);
    return ExponentVector(std::move(caps));
}

} // namespace

std::vector<ExponentVector> enumerate_fiber(const TransformMatrix& a, const ExponentVector& k,
                                            const std::optional<ExponentVector>& support_bounds) {
    if (k.size() != a.rows())
        fail(ErrorKind::DimensionMismatch, "target length does not match matrix rows");
    if (support_bounds && support_bounds->size() != a.cols())
        fail(ErrorKind::DimensionMismatch, "support bounds need one entry per column");

    FiberSearch search{a, std::vector<Exponent>(a.cols(), kNoCap),
                       std::vector<Exponent>(k.begin(), k.end()), std::vector<Exponent>(a.cols(), 0), {}};
    for (std::size_t r = 0; r < a.cols(); ++r) {
        if (support_bounds)
            search.caps[r] = (*support_bounds)[r];
        if (a.column_is_zero(r) && search.caps[r] == kNoCap)
            fail(ErrorKind::UnboundedFiber,
                 "column " + std::to_string(r) + " is zero; the fiber is infinite without a support bound");
    }
    search.descend(0);
    return std::move(search.out);
}

Coefficient pmf(const DistributionSpec& dist, const ExponentVector& j, Mode mode) {
    if (j.size() != dimension(dist))
        fail(ErrorKind::DimensionMismatch, "outcome length does not match the distribution");

    if (const auto* poisson = std::get_if<PoissonSpec>(&dist)) {
        if (mode == Mode::Exact)
            fail(ErrorKind::ModeMismatch, "Poisson probabilities are not rational");
        double log_p = 0.0;
        for (std::size_t r = 0; r < j.size(); ++r) {
            const double lambda = poisson->lambdas[r];
            log_p += -lambda + static_cast<double>(j[r]) * std::log(lambda) - log_factorial(j[r]);
        }
        return Coefficient(std::exp(log_p));
    }

    Rational p = 0;
    if (const auto* m = std::get_if<MultinomialSpec>(&dist)) {
        Exponent total = 0;
        for (Exponent e : j)
            total += e;
        if (total == m->trials) {
            mpz_class coeff;
            mpz_fac_ui(coeff.get_mpz_t(), static_cast<unsigned long>(m->trials));
            p = 1;
            for (std::size_t r = 0; r < j.size(); ++r) {
                mpz_class f;
                mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(j[r]));
                coeff /= f;
                for (Exponent e = 0; e < j[r]; ++e)
                    p *= m->probs[r];
            }
            p *= coeff;
        }
    } else {
        const auto& entries = std::get<TableSpec>(dist).entries;
        if (auto it = entries.find(j); it != entries.end())
            p = it->second;
    }
    return mode == Mode::Exact ? Coefficient(p) : Coefficient(p.get_d());
}

OracleResult conditional_moment(const DistributionSpec& dist, const TransformMatrix& a,
                                const ConditionalQuery& query, Mode mode) {
    if (dimension(dist) != a.cols() || query.s.size() != a.cols())
        fail(ErrorKind::DimensionMismatch, "distribution, matrix and moment order disagree on dimension");
    validate(dist, mode);

    const auto fiber = enumerate_fiber(a, query.k, effective_caps(dist, query.support_bounds));
    Coefficient weighted = Coefficient::zero(mode);
    Coefficient mass = Coefficient::zero(mode);
    std::size_t positive = 0;
    for (const auto& j : fiber) {
        Coefficient p = pmf(dist, j, mode);
        if (p.sign() <= 0)
            continue;
        ++positive;
        mass += p;
        Coefficient weight = Coefficient::one(mode);
        for (std::size_t r = 0; r < j.size(); ++r)
            weight *= j[r] >= query.s[r] ? falling_factorial(j[r], query.s[r], mode) : Coefficient::zero(mode);
        weighted += weight * p;
    }

    if (mass.is_zero()) {
        // Poisson probabilities are all positive, so a nonempty fiber with
        // zero mass can only come from underflow.
        if (std::holds_alternative<PoissonSpec>(dist) && !fiber.empty())
            fail(ErrorKind::ZeroProbability, "fiber mass underflows to zero");
        fail(ErrorKind::EmptyFiber, "no outcome with positive probability satisfies A j = " + query.k.to_string());
    }
    return {weighted / mass, mass, positive};
}

} // namespace mgf::oracle
