#pragma once

#include <map>
#include <optional>

#include "mgf/coefficient.hpp"
#include "mgf/core.hpp"
#include "mgf/distributions.hpp"
#include "mgf/series.hpp"

namespace mgf {

/// Condition on Y = k and ask for the mixed factorial moment of order s.
/// support_bounds caps X componentwise; it is required when A has a zero
/// column and X has unbounded support.
struct ConditionalQuery {
    ExponentVector k;
    ExponentVector s;
    std::optional<ExponentVector> support_bounds;
};

// A conditional quantity together with the conditioning probability
// P(Y = k) it was divided by.
struct MomentResult {
    Coefficient value;
    Coefficient prob_y;
};

using ConditionalPmf = std::map<ExponentVector, Coefficient>;

// G_Y truncated to the box [0, k].
TruncatedSeries pgf_of_y(const DistributionSpec& dist, const TransformMatrix& a, const ExponentVector& k,
                         Mode mode, const std::optional<ExponentVector>& support_bounds = std::nullopt);

// Number of outcomes j with P(X = j) > 0 and A j = k (Poisson: every j in
// the fiber, capped by support_bounds).
Exponent fiber_support_size(const DistributionSpec& dist, const TransformMatrix& a, const ExponentVector& k,
                            const std::optional<ExponentVector>& support_bounds = std::nullopt);

// {j : A j = k, P(X = j) > 0} -> P(X = j | Y = k), read off the joint pgf.
ConditionalPmf conditional_pmf(const DistributionSpec& dist, const TransformMatrix& a, const ExponentVector& k,
                               Mode mode, const std::optional<ExponentVector>& support_bounds = std::nullopt);

/// E[X_1^(s_1) ... X_d^(s_d) | Y = k] through the generic route:
/// differentiate the joint pgf in t, set t = 1, take [z^k], and divide by
/// [z^k] G_Y.
MomentResult conditional_factorial_moment(const DistributionSpec& dist, const TransformMatrix& a,
                                          const ConditionalQuery& query, Mode mode);

// Poisson shortcut: prod lambda_r^{s_r} [z^{k - A s}] G_Y / [z^k] G_Y, and
// exactly zero when k - A s has a negative entry.
MomentResult poisson_conditional_moment(const std::vector<double>& lambdas, const TransformMatrix& a,
                                        const ConditionalQuery& query);

// Multinomial shortcut: the falling-factorial prefactor
// N! prod p_r^{s_r} / (N - |s|)! times a sum over compositions j of N - |s|
// with A (j + s) = k, divided by P(Y = k). Computed exactly and converted to
// the requested mode at the end.
MomentResult multinomial_conditional_moment(Exponent trials, const std::vector<Rational>& probs,
                                            const TransformMatrix& a, const ConditionalQuery& query,
                                            Mode mode = Mode::Exact);

// Dispatches to the family's closed form; nullopt for tables.
std::optional<MomentResult> closed_form_conditional_moment(const DistributionSpec& dist, const TransformMatrix& a,
                                                           const ConditionalQuery& query, Mode mode);

} // namespace mgf
