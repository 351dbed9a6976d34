#pragma once

#include "mstat/stationarity/verdict.hpp"

namespace mstat::problems {

using geometry::PolyUnion;
using stationarity::ImplicitProgram;
using stationarity::Objective;
using stationarity::Verdict;

/// Lower level: min_y ½yᵀQy + xᵀPy + cᵀy s.t. Ay <= b; upper level: min f(x,y) s.t. x ∈ S.
struct BilevelLqInstance {
    std::size_t n1 = 0, n2 = 0, m = 0;
    Mat Q;  // n2 x n2, PSD
    Mat P;  // n1 x n2
    Vec c;  // n2
    Mat A;  // m x n2
    Vec b;  // m
    Objective upper;                    // on (x, y)
    std::optional<PolyUnion> leader_set;  // S ⊆ R^{n1}; R^{n1} when absent
};

/// {x ∈ S, Qy + Pᵀx + c + Aᵀλ = 0, (Ay - b, λ) ∈ gph N̂_{R^m_-}} over (x, y, λ).
struct MpccSystem {
    PolyUnion feasible;
    PolyUnion complementarity;  // gph N̂_{R^m_-} over (a, λ)
};

struct BilevelBundle {
    ImplicitProgram program;
    MpccSystem mpcc;
};

/// Throws PreconditionError when Q is not positive semidefinite.
BilevelBundle build_bilevel_lq(const BilevelLqInstance& instance);

/// Per-coordinate complementarity graph (R_- x {0}) ∪ ({0} x R_+), coordinates (a_1..a_m, λ_1..λ_m).
PolyUnion complementarity_graph(std::size_t m);

/// K(x,y) = {λ >= 0 : Qy + Pᵀx + c + Aᵀλ = 0, λ_i (Ay-b)_i = 0}; empty when Ay ≰ b.
PolyUnion lower_level_multipliers(const BilevelLqInstance& instance, const Vec& x, const Vec& y);

/// ∃ ν, μ: 0 ∈ ∂f + (Pν, Qν + Aᵀμ) + N_S(x) x {0}, (μ, -Aν) ∈ N_{gph N̂}(Ay - b, λ).
Verdict fully_explicit_stationarity(const BilevelLqInstance& instance, const Vec& x, const Vec& y, const Vec& lambda);

struct MultiplierReport {
    bool strict_mf = false;
    bool licq = false;
    bool multiplier_singleton = false;
    std::vector<std::string> certificates;
};

/// Throws PreconditionError when λ ∉ K(x,y).
MultiplierReport bilevel_multiplier_conditions(const BilevelLqInstance& instance, const Vec& x, const Vec& y, const Vec& lambda);

geometry::json to_json(const MultiplierReport& report);

}  // namespace mstat::problems
