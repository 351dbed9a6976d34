#pragma once

#include "oracles.hpp"

#include "mstat/mappings/mapping.hpp"

namespace testsupport {

using mstat::mappings::PolyMapping;

/// (ξ, -η) sampled as a limiting normal to the graph near (z, w).
inline bool sampled_coderivative(const PolyMapping& map, const Vec& z, const Vec& w, const Vec& eta, const Vec& xi) {
    Vec zw = mstat::concat(z, w);
    auto pts = nearby_points(map.graph(), zw, {Q(1, 100), Q(1, 1000)});
    return sampled_limiting_normal(map.graph(), pts, mstat::concat(xi, mstat::neg(eta)));
}

/// w in S2(S1(z)) decided by one LP per piece pair over the middle variable.
inline bool composite_member(const PolyMapping& s1, const PolyMapping& s2, const Vec& z, const Vec& w) {
    using namespace mstat::geometry;
    const std::size_t k = s1.n_out();
    for (const auto& P : s1.graph().pieces())
        for (const auto& R : s2.graph().pieces()) {
            ConvexPolyhedron sys(k);
            auto add = [&](const ConvexPolyhedron& piece, const Vec& fixed, bool fixed_first) {
                const std::size_t f = fixed.size();
                auto split = [&](const Vec& row, const Rational& rhs, bool eq) {
                    Vec a(k);
                    Rational b = rhs;
                    for (std::size_t i = 0; i < f; ++i) b -= row[fixed_first ? i : k + i] * fixed[i];
                    for (std::size_t i = 0; i < k; ++i) a[i] = row[fixed_first ? f + i : i];
                    eq ? sys.add_eq(a, b) : sys.add_ineq(a, b);
                };
                for (std::size_t i = 0; i < piece.A.size(); ++i) split(piece.A[i], piece.b[i], false);
                for (std::size_t i = 0; i < piece.E.size(); ++i) split(piece.E[i], piece.d[i], true);
            };
            add(P, z, true);
            add(R, w, false);
            if (lp_feasible(sys).feasible) return true;
        }
    return false;
}

/// (z1, z2) ⇒ base(z1) + C z2 + c, with z1 of base's input dimension.
inline PolyMapping shifted_by_affine(const PolyMapping& base, const Mat& C, const Vec& c, std::size_t n2) {
    const std::size_t n1 = base.n_in(), m = base.n_out();
    Mat T = mstat::zero_matrix(n1 + m, n1 + n2 + m);
    for (std::size_t i = 0; i < n1; ++i) T[i][i] = 1;
    for (std::size_t i = 0; i < m; ++i) {
        T[n1 + i][n1 + n2 + i] = 1;
        for (std::size_t j = 0; j < n2; ++j) T[n1 + i][n1 + j] = -C[i][j];
    }
    Vec t = mstat::zeros(n1 + m);
    for (std::size_t i = 0; i < m; ++i) t[n1 + i] = -c[i];
    return PolyMapping(n1 + n2, m, mstat::geometry::affine_preimage(base.graph(), T, t, n1 + n2 + m));
}

/// Reorders the inputs of a map on (z2, z1) to (z1, z2).
inline PolyMapping swap_inputs(const PolyMapping& map, std::size_t n_first) {
    const std::size_t n = map.n_in(), m = map.n_out(), n2 = n - n_first;
    Mat T = mstat::zero_matrix(n + m, n + m);
    for (std::size_t i = 0; i < n2; ++i) T[i][n_first + i] = 1;
    for (std::size_t i = 0; i < n_first; ++i) T[n2 + i][i] = 1;
    for (std::size_t i = 0; i < m; ++i) T[n + i][n + i] = 1;
    return PolyMapping(n, m, mstat::geometry::affine_preimage(map.graph(), T, mstat::zeros(n + m), n + m));
}

/// Example (a): gph F = (R+ x {0}) ∪ (R- x {1}).
inline PolyMapping example_a_F() {
    return PolyMapping(1, 1, uni({poly(2, {{V({-1, 0}), 0}}, {{V({0, 1}), 0}}), poly(2, {{V({1, 0}), 0}}, {{V({0, 1}), 1}})}));
}
/// Example (a): G(z,λ) = [-z-λ, ∞).
inline PolyMapping example_a_G() { return PolyMapping(2, 1, uni({poly(3, {{V({-1, -1, -1}), 0}})})); }
/// z ⇒ (z, F(z)).
inline PolyMapping example_a_lifted_F() {
    return PolyMapping(1, 2, uni({poly(3, {{V({-1, 0, 0}), 0}}, {{V({1, -1, 0}), 0}, {V({0, 0, 1}), 0}}),
                                  poly(3, {{V({1, 0, 0}), 0}}, {{V({1, -1, 0}), 0}, {V({0, 0, 1}), 1}})}));
}
/// Hand-derived gph H: {z >= 0, w >= -z} ∪ {z <= 0, w >= -z - 1}.
inline PolyMapping example_a_H_closed() {
    return PolyMapping(1, 1, uni({poly(2, {{V({-1, 0}), 0}, {V({-1, -1}), 0}}), poly(2, {{V({1, 0}), 0}, {V({-1, -1}), 1}})}));
}

}  // namespace testsupport
