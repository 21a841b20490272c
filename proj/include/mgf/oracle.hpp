#pragma once

#include <optional>
#include <vector>

#include "mgf/coefficient.hpp"
#include "mgf/conditioning.hpp"
#include "mgf/core.hpp"
#include "mgf/distributions.hpp"

// Brute-force ground truth. Nothing here touches series, transform or the
// conditioning pipeline: fibers are enumerated by depth-first search and
// pmfs are evaluated from their closed formulas.
namespace mgf::oracle {

// {j in N^d : A j = k}, lexicographic, j_1 outermost. Zero columns need a
// support bound (UnboundedFiber otherwise).
std::vector<ExponentVector> enumerate_fiber(const TransformMatrix& a, const ExponentVector& k,
                                            const std::optional<ExponentVector>& support_bounds = std::nullopt);

// P(X = j) straight from the family's pmf formula.
Coefficient pmf(const DistributionSpec& dist, const ExponentVector& j, Mode mode);

struct OracleResult {
    Coefficient value;
    Coefficient prob_y;
    std::size_t fiber_size = 0;
};

// sum_j prod_r j_r^(s_r) P(X = j) / sum_j P(X = j) over the fiber of k.
OracleResult conditional_moment(const DistributionSpec& dist, const TransformMatrix& a,
                                const ConditionalQuery& query, Mode mode);

} // namespace mgf::oracle
