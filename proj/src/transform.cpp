#include "mgf/transform.hpp"

#include <algorithm>
#include <limits>

namespace mgf {

namespace {

constexpr Exponent kUnbounded = std::numeric_limits<Exponent>::max();

void check_shapes(const TruncatedSeries& g, const TransformMatrix& a, const TruncationSpec& ztrunc,
                  const std::optional<ExponentVector>& support_bounds) {
    if (g.num_vars() != a.cols())
        fail(ErrorKind::DimensionMismatch, "series has " + std::to_string(g.num_vars()) +
                                               " variables but the matrix has " + std::to_string(a.cols()) +
                                               " columns");
    if (ztrunc.size() != a.rows())
        fail(ErrorKind::DimensionMismatch, "target box has " + std::to_string(ztrunc.size()) +
                                               " variables but the matrix has " + std::to_string(a.rows()) +
                                               " rows");
    if (support_bounds && support_bounds->size() != a.cols())
        fail(ErrorKind::DimensionMismatch, "support bounds must have one entry per matrix column");
}

// Per-column degree the input must retain; kUnbounded for a zero column
// without a support bound.
std::vector<Exponent> required_degrees(const TransformMatrix& a, const ExponentVector& box,
                                       const std::optional<ExponentVector>& support_bounds) {
    std::vector<Exponent> need(a.cols(), kUnbounded);
    for (std::size_t r = 0; r < a.cols(); ++r) {
        if (auto reach = a.column_reach(r, box))
            need[r] = *reach;
        if (support_bounds)
            need[r] = std::min(need[r], (*support_bounds)[r]);
    }
    return need;
}

void check_coverage(const TruncatedSeries& g, const std::vector<Exponent>& need) {
    if (g.is_complete())
        return;
    for (std::size_t r = 0; r < need.size(); ++r) {
        if (need[r] == kUnbounded)
            fail(ErrorKind::InsufficientTruncation,
                 "variable " + std::to_string(r) +
                     " maps to a zero column, so every degree contributes; the input series is "
                     "truncated and no support bound was given");
        if (g.trunc().bounds[r] < need[r])
            fail(ErrorKind::InsufficientTruncation,
                 "variable " + std::to_string(r) + " is retained to degree " +
                     std::to_string(g.trunc().bounds[r]) + " but degree " + std::to_string(need[r]) +
                     " can reach the target box");
    }
}

bool beyond_support(const ExponentVector& j, const std::optional<ExponentVector>& support_bounds) {
    return support_bounds && !j.fits_within(*support_bounds);
}

} // namespace

ExponentVector fiber_bounds(const TransformMatrix& a, const ExponentVector& box,
                            const std::optional<ExponentVector>& support_bounds) {
    if (support_bounds && support_bounds->size() != a.cols())
        fail(ErrorKind::DimensionMismatch, "support bounds must have one entry per matrix column");
    std::vector<Exponent> need = required_degrees(a, box, support_bounds);
    for (std::size_t r = 0; r < need.size(); ++r)
        if (need[r] == kUnbounded)
            fail(ErrorKind::UnboundedFiber, "column " + std::to_string(r) +
                                                " of the matrix is zero and no support bound was given");
    return ExponentVector(std::move(need));
}

TruncatedSeries monomial_substitute(const TruncatedSeries& g, const TransformMatrix& a,
                                    const TruncationSpec& ztrunc,
                                    const std::optional<ExponentVector>& support_bounds) {
    check_shapes(g, a, ztrunc, support_bounds);
    check_coverage(g, required_degrees(a, ztrunc.bounds, support_bounds));

    SeriesBuilder out(g.mode(), ztrunc);
    bool capped = false;
    for (const auto& [j, b] : g.terms()) {
        if (beyond_support(j, support_bounds)) {
            capped = true;
            continue;
        }
        out.add(monomial_image(a, j), b);
    }
    if (!g.is_complete() || capped)
        out.mark_incomplete();
    return std::move(out).finish();
}

TruncatedSeries joint_pgf(const TruncatedSeries& g, const TransformMatrix& a, const TruncationSpec& ttrunc,
                          const TruncationSpec& ztrunc, const std::optional<ExponentVector>& support_bounds) {
    check_shapes(g, a, ztrunc, support_bounds);
    if (ttrunc.size() != a.cols())
        fail(ErrorKind::DimensionMismatch, "t box must have one entry per matrix column");

    std::vector<Exponent> need = required_degrees(a, ztrunc.bounds, support_bounds);
    for (std::size_t r = 0; r < need.size(); ++r)
        need[r] = std::min(need[r], ttrunc.bounds[r]);
    check_coverage(g, need);

    SeriesBuilder out(g.mode(), TruncationSpec{ttrunc.bounds.concat(ztrunc.bounds)});
    bool capped = false;
    for (const auto& [j, b] : g.terms()) {
        if (beyond_support(j, support_bounds)) {
            capped = true;
            continue;
        }
        out.add(j.concat(monomial_image(a, j)), b);
    }
    if (!g.is_complete() || capped)
        out.mark_incomplete();
    return std::move(out).finish();
}

} // namespace mgf
