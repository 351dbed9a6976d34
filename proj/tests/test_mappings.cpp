#include "mapping_oracles.hpp"

#include "mstat/core/errors.hpp"

#include <doctest.h>

using namespace testsupport;
using namespace mstat::mappings;
using namespace mstat::geometry;
using mstat::zeros;

namespace {

PolyUnion singleton(const Vec& x) { return PolyUnion(ConvexPolyhedron::point(x)); }

// a ⇒ N̂_{R-}(a): (R- x {0}) ∪ ({0} x R+)
PolyMapping normal_map_nonpositive() {
    return PolyMapping(1, 1, uni({poly(2, {{V({1, 0}), 0}}, {{V({0, 1}), 0}}), poly(2, {{V({0, -1}), 0}}, {{V({1, 0}), 0}})}));
}

}  // namespace

TEST_CASE("image_at slices the graph") {
    auto F = example_a_F();
    CHECK(same_set(image_at(F, V({-2})), singleton(V({1}))));
    CHECK(same_set(image_at(F, V({0})), uni({ConvexPolyhedron::point(V({0})), ConvexPolyhedron::point(V({1}))})));
    auto half = PolyMapping(1, 1, uni({poly(2, {{V({-1, 0}), 0}})}));
    CHECK(image_at(half, V({-1})).is_empty());
    CHECK(same_set(domain(half), uni({poly(1, {{V({-1}), 0}})})));
}

TEST_CASE("coderivative of an affine map is the adjoint") {
    Mat A{V({1, 2}), V({0, -1}), V({3, 1})};
    Vec b = V({1, 0, -2});
    auto h = affine_map(A, b, 2);
    Vec z = V({1, -1});
    Vec w = mstat::add(mstat::mat_vec(A, z), b);
    for (const auto& eta : integer_box(3, 1)) {
        auto img = coderivative_at(h, z, w, eta);
        CHECK(same_set(img, singleton(mstat::mat_vec(mstat::transpose(A, 2), eta))));
    }
}

TEST_CASE("coderivative of H from example (a) at (-1, 0)") {
    auto H = example_a_H_closed();
    auto D = coderivative_at(H, V({-1}), V({0}), V({1}));
    CHECK(same_set(D, singleton(V({-1}))));
    CHECK(coderivative_at(H, V({-1}), V({0}), V({-1})).is_empty());
    for (long eta = -2; eta <= 2; ++eta)
        for (long xi = -3; xi <= 3; ++xi)
            CHECK(coderivative_at(H, V({-1}), V({0}), V({eta})).contains(V({xi})) ==
                  sampled_coderivative(H, V({-1}), V({0}), V({eta}), V({xi})));
    CHECK_THROWS_AS(coderivative(H, V({-1}), V({-1})), mstat::PreconditionError);
}

TEST_CASE("H composed from the lifted F and G matches the hand-derived graph") {
    auto c = compose(example_a_lifted_F(), example_a_G());
    CHECK(same_set(c.composed.graph(), example_a_H_closed().graph()));
}

TEST_CASE("coderivative agrees with sampled graph normals") {
    auto N = normal_map_nonpositive();
    for (const auto& zw : {V({0, 0}), V({-1, 0}), V({0, 2})}) {
        Vec z{zw[0]}, w{zw[1]};
        auto D = coderivative(N, z, w);
        for (const auto& ex : integer_box(2, 2))
            CHECK(D.graph().contains(ex) == sampled_coderivative(N, z, w, Vec{ex[0]}, Vec{ex[1]}));
    }
}

TEST_CASE("Mordukhovich criteria") {
    Mat A{V({1, 0, 1}), V({0, 1, 1})};
    auto h = affine_map(A, zeros(2), 3);
    CHECK(criterion_check(h, zeros(3), zeros(2), Criterion::MetricRegularity));
    CHECK(criterion_check(h, zeros(3), zeros(2), Criterion::Aubin));
    Mat B{V({1, 1})};
    CHECK_FALSE(criterion_check(affine_map(mstat::transpose(B, 2), zeros(2), 1), V({0}), zeros(2), Criterion::MetricRegularity));

    auto zero_const = constant_map(1, singleton(V({0})));
    CHECK(criterion_check(zero_const, V({3}), V({0}), Criterion::Aubin));
    CHECK_FALSE(criterion_check(zero_const, V({3}), V({0}), Criterion::MetricRegularity));

    auto N = normal_map_nonpositive();
    CHECK_FALSE(criterion_check(N, V({0}), V({0}), Criterion::Aubin));
    // Oracle: Aubin fails iff some (ξ, 0) with ξ ≠ 0 is a sampled limiting normal.
    bool oracle_nonzero = false;
    for (long xi = -2; xi <= 2; ++xi)
        if (xi != 0 && sampled_coderivative(N, V({0}), V({0}), V({0}), V({xi}))) oracle_nonzero = true;
    CHECK(oracle_nonzero);
    CHECK(criterion_check(N, V({-1}), V({0}), Criterion::Aubin));
    // The criterion on a precomputed coderivative agrees with a direct zero slice.
    auto D = coderivative(N, V({0}), V({0}));
    bool slice_trivial = is_trivial_cone(image_at(D, V({0})));
    CHECK(criterion_check(D, Criterion::Aubin) == slice_trivial);
}

TEST_CASE("local boundedness") {
    // {λ in R^2 : λ1 + λ2 >= 1}, constant in z.
    auto F = constant_map(2, uni({poly(2, {{V({-1, -1}), -1}})}));
    CHECK_FALSE(locally_bounded_at(F, V({0, 0})));
    // gph K for n = 2, κ = 1: each (z_i, λ_i) in {z_i = 0, λ_i in [0,1]} ∪ {λ_i = 0}, λ1 + λ2 >= 1.
    std::vector<ConvexPolyhedron> pieces;
    for (int p1 = 0; p1 < 2; ++p1)
        for (int p2 = 0; p2 < 2; ++p2) {
            ConvexPolyhedron P(4);
            P.add_ineq(V({0, 0, -1, -1}), -1);
            for (int i = 0; i < 2; ++i) {
                int pick = i == 0 ? p1 : p2;
                if (pick == 0) {
                    P.add_eq(mstat::unit(4, i), 0);
                    P.add_ineq(mstat::unit(4, 2 + i), 1);
                    P.add_ineq(mstat::neg(mstat::unit(4, 2 + i)), 0);
                } else {
                    P.add_eq(mstat::unit(4, 2 + i), 0);
                }
            }
            pieces.push_back(P);
        }
    PolyMapping K(2, 2, PolyUnion::from_pieces(4, pieces));
    for (const auto& z : {V({0, 0}), V({1, 0}), V({0, -1})}) CHECK(locally_bounded_at(K, z));
    CHECK_THROWS_AS(locally_bounded_at(K, V({1, 1})), mstat::PreconditionError);
    auto box = constant_map(1, uni({poly(1, {{V({1}), 1}, {V({-1}), 1}})}));
    CHECK(locally_bounded_at(box, V({5})));
}

TEST_CASE("composition: identity and sampled images") {
    auto F = example_a_F();
    auto id = affine_map(mstat::identity(1), zeros(1), 1);
    CHECK(same_set(compose(id, F).composed.graph(), F.graph()));
    CHECK(same_set(compose(F, id).composed.graph(), F.graph()));

    auto S1 = normal_map_nonpositive();
    auto S2 = PolyMapping(1, 1, uni({poly(2, {{V({1, -1}), 0}, {V({-1, -1}), 0}}), poly(2, {{V({0, 1}), 2}}, {{V({1, 0}), 1}})}));
    auto c = compose(S1, S2);
    for (long z = -2; z <= 2; ++z)
        for (long w = -3; w <= 3; ++w) CHECK(c.composed.in_graph(V({z}), V({w})) == composite_member(S1, S2, V({z}), V({w})));
    // Intermediate map: (z, w) ⇒ S1(z) ∩ S2^{-1}(w).
    for (long z = -1; z <= 1; ++z)
        for (long w = -1; w <= 2; ++w)
            for (long y = -1; y <= 2; ++y)
                CHECK(c.intermediate.in_graph(V({z, w}), V({y})) == (S1.in_graph(V({z}), V({y})) && S2.in_graph(V({y}), V({w}))));
}

TEST_CASE("chain rule on example (a)") {
    auto r = chain_rule_check(example_a_lifted_F(), example_a_G(), V({-1}), V({0}));
    CHECK(r.intermediate_locally_bounded);
    CHECK(r.inclusion);
    auto r0 = chain_rule_check(example_a_lifted_F(), example_a_G(), V({0}), V({0}));
    CHECK(r0.inclusion);
    CHECK(r0.intermediate_strata == 2);  // F(0) = {0, 1}, both satisfy 0 >= -λ
}

TEST_CASE("product graph slices are products of slices") {
    auto F = example_a_F();
    auto N = normal_map_nonpositive();
    auto P = product(F, N);
    for (long z = -2; z <= 2; ++z) {
        auto a = image_at(F, V({z})), b = image_at(N, V({z}));
        auto s = image_at(P, V({z}));
        if (a.is_empty() || b.is_empty()) {
            CHECK(s.is_empty());
            continue;
        }
        CHECK(same_set(s, mstat::geometry::product(a, b)));
    }
}

TEST_CASE("product rule: qualification and inclusion") {
    auto F = example_a_F();
    auto h = affine_map(Mat{V({2})}, V({1}), 1);
    auto r = product_report(F, h, V({0}), V({0}), V({1}));
    CHECK(r.qualification);
    CHECK(r.estimate_inclusion);
    auto N = normal_map_nonpositive();
    auto r2 = product_report(N, N, V({0}), V({0}), V({0}));
    CHECK_FALSE(r2.qualification);
    CHECK(r2.estimate_inclusion);
}

TEST_CASE("inverse symmetry of coderivatives") {
    auto N = normal_map_nonpositive();
    auto inv = inverse(N);
    for (const auto& zw : {V({0, 0}), V({-1, 0}), V({0, 1})}) {
        Vec z{zw[0]}, w{zw[1]};
        auto D = coderivative(N, z, w);
        auto Di = coderivative(inv, w, z);
        for (const auto& ex : integer_box(2, 2)) {
            Vec eta{ex[0]}, xi{ex[1]};
            if (D.graph().contains(mstat::concat(eta, xi))) CHECK(Di.graph().contains(mstat::concat(mstat::neg(xi), mstat::neg(eta))));
        }
    }
}

TEST_CASE("sigma subregularity condition") {
    auto half = PolyUnion(poly(1, {{V({1}), 0}}));
    auto whole = PolyUnion(ConvexPolyhedron::universe(1));
    auto g_half = shifted_set(mstat::identity(1), zeros(1), half, 1);
    auto g_whole = shifted_set(mstat::identity(1), zeros(1), whole, 1);
    CHECK(sigma_subregularity_check(g_half, g_whole, V({0}), V({0}), V({0})).range_condition);

    // Both factors z ⇒ z - {x1 <= 0} in R^2: the ranges coincide on a ray, so they are not opposite.
    auto h2 = PolyUnion(poly(2, {{V({1, 0}), 0}}));
    auto g = shifted_set(mstat::identity(2), zeros(2), h2, 2);
    auto same = sigma_subregularity_check(g, g, zeros(2), zeros(2), zeros(2));
    auto R = coderivative_range(coderivative(g, zeros(2), zeros(2)));
    CHECK(same_set(R, PolyUnion(poly(2, {{V({-1, 0}), 0}}, {{V({0, 1}), 0}}))));
    CHECK(same.range_condition);
    // Opposite half-planes give opposite rays: the condition fails, polyhedrality still certifies.
    auto g_opp = shifted_set(mstat::identity(2), zeros(2), PolyUnion(poly(2, {{V({-1, 0}), 0}})), 2);
    auto opp = sigma_subregularity_check(g, g_opp, zeros(2), zeros(2), zeros(2));
    CHECK_FALSE(opp.range_condition);
    CHECK(opp.product_subregular);

    auto ax1 = shifted_set(mstat::identity(2), zeros(2), PolyUnion(axis(2, 1)), 2);
    auto ax2 = shifted_set(mstat::identity(2), zeros(2), PolyUnion(axis(2, 0)), 2);
    CHECK(sigma_subregularity_check(ax1, ax2, zeros(2), zeros(2), zeros(2)).range_condition);
}

TEST_CASE("mapping JSON round trip") {
    auto F = example_a_F();
    auto back = mapping_from_json(to_json(F), "");
    CHECK(back.n_in() == 1);
    CHECK(same_set(back.graph(), F.graph()));
    auto j = to_json(F);
    j["n_out"] = 2;
    CHECK_THROWS_AS(mapping_from_json(j, ""), mstat::ParseError);
}
