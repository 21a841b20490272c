#pragma once

#include <map>
#include <string_view>
#include <variant>
#include <vector>

#include "mgf/coefficient.hpp"
#include "mgf/core.hpp"
#include "mgf/series.hpp"

namespace mgf {

// Independent X_r ~ Poisson(lambda_r).
struct PoissonSpec {
    std::vector<double> lambdas;
};

// (X_1..X_d) ~ Multinomial(trials; probs).
struct MultinomialSpec {
    Exponent trials = 0;
    std::vector<Rational> probs;
};

// Arbitrary finite joint pmf.
struct TableSpec {
    std::map<ExponentVector, Rational> entries;
};

using DistributionSpec = std::variant<PoissonSpec, MultinomialSpec, TableSpec>;

std::string_view family_name(const DistributionSpec& dist);
std::size_t dimension(const DistributionSpec& dist);

// Mode the family is naturally computed in: float for Poisson, exact
// otherwise.
Mode natural_mode(const DistributionSpec& dist);

// Checks the family invariants for the given coefficient mode. Raises
// InvalidDistribution (or ModeMismatch for exact Poisson).
void validate(const DistributionSpec& dist, Mode mode);

// Mass tolerance for float-mode validation.
inline constexpr double kMassTolerance = 1e-12;

// Per-variable cap ceil(lambda + 10 sqrt(lambda) + 20); the neglected tail per
// variable is far below 1e-12.
ExponentVector default_poisson_bounds(const std::vector<double>& lambdas);

// Sum over r of P(X_r > bounds_r): an upper bound on the probability mass a
// truncated Poisson pgf omits.
double poisson_tail_bound(const std::vector<double>& lambdas, const ExponentVector& bounds);

TruncatedSeries poisson_pgf(const std::vector<double>& lambdas, const TruncationSpec& ttrunc);
TruncatedSeries multinomial_pgf(Exponent trials, const std::vector<Rational>& probs, Mode mode = Mode::Exact);
TruncatedSeries table_pgf(const std::map<ExponentVector, Rational>& entries, Mode mode = Mode::Exact);

// Dispatches on the family. Poisson uses ttrunc (or the default bounds when
// ttrunc is empty); the other families are complete polynomials and ignore it.
TruncatedSeries build_pgf(const DistributionSpec& dist, Mode mode, const std::optional<TruncationSpec>& ttrunc);

} // namespace mgf
