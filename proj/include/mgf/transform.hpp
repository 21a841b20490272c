#pragma once

#include <optional>
#include <vector>

#include "mgf/core.hpp"
#include "mgf/series.hpp"

namespace mgf {

// Largest degree of each input variable that can reach the box [0, box]
// under A: min over rows with a_ir > 0 of floor(box_i / a_ir). Zero columns
// take their bound from support_bounds, or raise UnboundedFiber without one.
ExponentVector fiber_bounds(const TransformMatrix& a, const ExponentVector& box,
                            const std::optional<ExponentVector>& support_bounds = std::nullopt);

/// Generating function of the pushed-forward sequence c_k = sum_{A j = k} b_j.
///
/// Every input term b_j t^j becomes b_j z^{A j}; terms landing outside ztrunc
/// are dropped. The input must retain every j that can land inside ztrunc,
/// otherwise InsufficientTruncation is raised. support_bounds, when given,
/// declares X_r <= support_bounds_r: input terms beyond it are ignored and
/// zero columns become admissible for incomplete inputs.
TruncatedSeries monomial_substitute(const TruncatedSeries& g, const TransformMatrix& a,
                                    const TruncationSpec& ztrunc,
                                    const std::optional<ExponentVector>& support_bounds = std::nullopt);

/// Joint generating function in (t_1..t_d; z_1..z_m): b_j t^j becomes
/// b_j t^j z^{A j}. The output box is ttrunc followed by ztrunc.
TruncatedSeries joint_pgf(const TruncatedSeries& g, const TransformMatrix& a, const TruncationSpec& ttrunc,
                          const TruncationSpec& ztrunc,
                          const std::optional<ExponentVector>& support_bounds = std::nullopt);

} // namespace mgf
