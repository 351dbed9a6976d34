#pragma once

#include "mapping_oracles.hpp"

#include "mstat/stationarity/program.hpp"

namespace testsupport {

using mstat::stationarity::ImplicitProgram;
using mstat::stationarity::Objective;

inline ImplicitProgram example_a_program() {
    ImplicitProgram p;
    p.n = p.m = p.s = 1;
    p.objective = Objective::affine(V({1}));
    p.lambda_map = example_a_F();
    p.residual_map = example_a_G();
    p.base_set = PolyUnion(ConvexPolyhedron::universe(1));
    return p;
}

/// Coordinate axes of R^2: the sparsity set with at most one nonzero.
inline PolyUnion axes2() { return uni({axis(2, 0), axis(2, 1)}); }

/// n = 2, κ = 1 with G(z,λ) = ∏ (C - (z_i, λ_i)), C = ({0} x [0,1]) ∪ (R x {0}), w ordered (a1,b1,a2,b2).
inline ImplicitProgram ccmp2_program(const Objective& f) {
    ImplicitProgram p;
    p.n = 2;
    p.m = 2;
    p.s = 4;
    p.objective = f;
    p.lambda_map = PolyMapping(2, 2, uni({poly(4, {{V({0, 0, -1, -1}), -1}})}));
    std::vector<ConvexPolyhedron> pieces;
    for (int mask = 0; mask < 4; ++mask) {
        ConvexPolyhedron P(8);
        for (std::size_t i = 0; i < 2; ++i) {
            Vec za = mstat::zeros(8), lb = mstat::zeros(8);
            za[i] = 1;
            za[4 + 2 * i] = 1;
            lb[2 + i] = 1;
            lb[5 + 2 * i] = 1;
            if (mask >> i & 1) {
                P.add_eq(za, 0);
                P.add_ineq(mstat::neg(lb), 0);
                P.add_ineq(lb, 1);
            } else {
                P.add_eq(lb, 0);
            }
        }
        pieces.push_back(P);
    }
    p.residual_map = PolyMapping(4, 4, PolyUnion(8, pieces));
    p.base_set = PolyUnion(ConvexPolyhedron::universe(2));
    // z ⇒ D_κ - z
    p.implicit_aggregate = PolyMapping(2, 2, uni({poly(4, {}, {{V({1, 0, 1, 0}), 0}}), poly(4, {}, {{V({0, 1, 0, 1}), 0}})}));
    return p;
}

/// F(z) = {z}, G(z,λ) = [-λ, ∞): feasible set z >= 0.
inline ImplicitProgram convex_program(const Objective& f) {
    ImplicitProgram p;
    p.n = p.m = p.s = 1;
    p.objective = f;
    p.lambda_map = PolyMapping(1, 1, uni({poly(2, {}, {{V({1, -1}), 0}})}));
    p.residual_map = PolyMapping(2, 1, uni({poly(3, {{V({0, -1, -1}), 0}})}));
    p.base_set = PolyUnion(ConvexPolyhedron::universe(1));
    return p;
}

}  // namespace testsupport
