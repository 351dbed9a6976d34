#include "mstat/problems/examples.hpp"

namespace mstat::problems {

using namespace geometry;
using mappings::PolyMapping;

stationarity::ImplicitProgram build_example_a() {
    stationarity::ImplicitProgram p;
    p.n = p.m = p.s = 1;
    p.objective = stationarity::Objective::affine(Vec{1});
    // (R+ x {0}) ∪ (R- x {1})
    ConvexPolyhedron right(2), left(2);
    right.add_ineq(Vec{-1, 0}, 0);
    right.add_eq(Vec{0, 1}, 0);
    left.add_ineq(Vec{1, 0}, 0);
    left.add_eq(Vec{0, 1}, 1);
    p.lambda_map = PolyMapping(1, 1, PolyUnion(2, {right, left}));
    // w >= -z - λ
    ConvexPolyhedron G(3);
    G.add_ineq(Vec{-1, -1, -1}, 0);
    p.residual_map = PolyMapping(2, 1, PolyUnion(G));
    p.base_set = PolyUnion(ConvexPolyhedron::universe(1));
    p.validate();
    return p;
}

OracleOnlyProgram build_example_b() {
    OracleOnlyProgram p;
    p.name = "example_b";
    p.n = p.m = 1;
    p.objective = [](const Vec& z) { return z[0]; };
    p.in_base_set = [](const Vec&) { return true; };
    p.lambda_values = [](const Vec& z) {
        if (z[0] >= 0) return std::vector<Vec>{Vec{0}};
        Rational l = -1 / z[0];
        return std::vector<Vec>{Vec{l}};
    };
    p.residual_contains = [](const Vec& z, const Vec&, const Vec& w) { return w[0] >= -1 && w[0] <= 1 + z[0]; };
    return p;
}

}  // namespace mstat::problems
