#pragma once

#include "mstat/stationarity/program.hpp"

#include <functional>

namespace mstat::problems {

/// A program known only through exact membership callables (non-polyhedral data).
struct OracleOnlyProgram {
    std::string name;
    std::size_t n = 0, m = 0;
    std::function<Rational(const Vec&)> objective;
    std::function<bool(const Vec&)> in_base_set;
    /// F(z) when it is finite.
    std::function<std::vector<Vec>(const Vec&)> lambda_values;
    /// w ∈ G(z, λ)
    std::function<bool(const Vec&, const Vec&, const Vec&)> residual_contains;
};

/// F(z) = {0} (z > 0), {0,1} (z = 0), {1} (z < 0); G(z,λ) = [-z-λ, ∞); f = id; M = R.
stationarity::ImplicitProgram build_example_a();

/// F(z) = {0} (z >= 0), {-1/z} (z < 0); G(z,λ) = [-1, 1+z]; f = id; M = R.
OracleOnlyProgram build_example_b();

}  // namespace mstat::problems
