#pragma once

#include "mstat/core/rational.hpp"

namespace mstat::geometry {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Vec x;           // optimal point (Optimal) or a feasible point (Unbounded)
    Rational value;  // objective value at x when Optimal
};

/// Exact simplex: maximize c·x subject to A x <= b, E x = d, x free in R^n.
/// Bland's rule, so it terminates on degenerate problems.
LpResult lp_maximize(std::size_t n, const Mat& A, const Vec& b, const Mat& E, const Vec& d, const Vec& c);

}  // namespace mstat::geometry
