#include "program_fixtures.hpp"

#include "mstat/core/errors.hpp"
#include "mstat/stationarity/pipeline.hpp"

#include <doctest.h>

using namespace testsupport;
using namespace mstat::stationarity;
using namespace mstat::geometry;
using mstat::is_zero;
using mstat::zeros;

namespace {

PolyUnion singleton(const Vec& x) { return PolyUnion(ConvexPolyhedron::point(x)); }

// Every holds-verdict must re-verify.
void check_witness(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, StationarityKind kind, const Verdict& v) {
    if (!v.holds) return;
    REQUIRE(v.witness.has_value());
    CHECK(verify_witness(p, d, z, kind, *v.witness));
}

// Vertices and relative-interior points of the triangle {λ ∈ [0,1]^2 : λ1 + λ2 >= 1}.
bool in_ccmp_k0(const Vec& l) { return l[0] >= 0 && l[1] >= 0 && l[0] <= 1 && l[1] <= 1 && l[0] + l[1] >= 1; }

}  // namespace

TEST_CASE("subdifferentials of the objective classes") {
    CHECK(same_set(PolyUnion(subdifferential_at(Objective::affine(V({1})), V({7}))), singleton(V({1}))));
    auto absval = Objective::max_affine({V({1}), V({-1})}, V({0, 0}));
    CHECK(same_set(PolyUnion(subdifferential_at(absval, V({0}))), uni({poly(1, {{V({1}), 1}, {V({-1}), 1}})})));
    CHECK(same_set(PolyUnion(subdifferential_at(absval, V({2}))), singleton(V({1}))));
    auto quad = Objective::quadratic({V({1, 0}), V({0, 1})}, V({0, 0}));
    CHECK(same_set(PolyUnion(subdifferential_at(quad, V({2, 3}))), singleton(V({2, 3}))));
    CHECK(quad.value(V({2, 3})) == Q(13, 2));
}

TEST_CASE("exact positive semidefiniteness") {
    CHECK(is_psd({V({2, -1}), V({-1, 2})}));
    CHECK(is_psd({V({1, 1}), V({1, 1})}));
    CHECK_FALSE(is_psd({V({1, 2}), V({2, 1})}));
    CHECK_FALSE(is_psd({V({0, 1}), V({1, 0})}));
    CHECK(is_psd({V({0, 0}), V({0, 0})}));
    CHECK_THROWS_AS(Objective::quadratic({V({1, 2}), V({0, 1})}, V({0, 0})), mstat::StructuralError);
    CHECK_FALSE(Objective::quadratic({V({0, 1}), V({1, 0})}, V({0, 0})).is_convex());
}

TEST_CASE("example (a) derived maps") {
    auto p = example_a_program();
    auto d = build_derived(p);
    CHECK(same_set(image_at(d.intermediate, V({0})), uni({ConvexPolyhedron::point(V({0})), ConvexPolyhedron::point(V({1}))})));
    CHECK(same_set(image_at(d.intermediate, {Q(-1, 2)}), singleton(V({1}))));
    CHECK(image_at(d.intermediate, V({-2})).is_empty());
    CHECK(same_set(domain(d.intermediate), uni({poly(1, {{V({-1}), 1}})})));
    CHECK(same_set(d.aggregate.graph(), example_a_H_closed().graph()));
    CHECK(is_feasible(p, d, V({-1})));
    CHECK_FALSE(is_feasible(p, d, V({-2})));
    CHECK_THROWS_AS(check_stationarity(p, d, V({-2}), StationarityKind::Implicit), mstat::PreconditionError);
    // K̂(z,w) = {λ ∈ F(z) : w >= -z-λ}
    for (const auto& zw : integer_box(2, 2)) {
        Vec z{zw[0]}, w{zw[1]};
        for (long l : {0L, 1L}) {
            bool expect = example_a_F().in_graph(z, V({l})) && w[0] >= -z[0] - l;
            CHECK(d.intermediate_perturbed.in_graph(mstat::concat(z, w), V({l})) == expect);
        }
    }
    auto reps = k_stratum_representatives(p, d, V({0}));
    REQUIRE(reps.size() == 2);
    CHECK(stratum_of(p, d, V({0}), V({1})).has_value());
    CHECK_FALSE(stratum_of(p, d, V({0}), V({2})).has_value());
}

TEST_CASE("example (a) at z = -1") {
    auto p = example_a_program();
    auto d = build_derived(p);
    Vec z = V({-1});
    // N_{gph H}(-1,0) = ray(-1,-1) and ∂f = {1}: ν = 1, ξ = -1.
    auto imp = check_stationarity(p, d, z, StationarityKind::Implicit);
    REQUIRE(imp.holds);
    CHECK(imp.witness->nu == V({1}));
    CHECK(imp.witness->xi == V({-1}));
    check_witness(p, d, z, StationarityKind::Implicit, imp);
    // K(-1) = {1}; D*F = {0} there, G normals span (-1,-1,-1): ν = 1, μ = -1.
    auto ex = check_stationarity(p, d, z, StationarityKind::Explicit, V({1}));
    REQUIRE(ex.holds);
    CHECK(ex.witness->nu == V({1}));
    CHECK(ex.witness->mu == V({-1}));
    check_witness(p, d, z, StationarityKind::Explicit, ex);
    CHECK_THROWS_AS(check_stationarity(p, d, z, StationarityKind::Explicit, V({0})), mstat::PreconditionError);
    auto fz = check_stationarity_strata(p, d, z, StationarityKind::Fuzzy);
    CHECK(fz.strata.size() == 1);
    for (const auto& v : fz.per_stratum) check_witness(p, d, z, StationarityKind::Fuzzy, v);
}

TEST_CASE("ccmp stationarity contrast at the origin") {
    auto p = ccmp2_program(Objective::affine(V({1, 1})));
    auto d = build_derived(p);
    Vec z = V({0, 0});
    CHECK(same_set(image_at(d.intermediate, z), uni({poly(2, {{V({-1, -1}), -1}, {V({1, 0}), 1}, {V({0, 1}), 1}})})));
    auto reps = k_stratum_representatives(p, d, z);
    CHECK(reps.size() == 7);
    for (const Vec& vertex : {V({1, 0}), V({0, 1}), V({1, 1})}) {
        bool found = false;
        for (const auto& r : reps) found = found || r.lambda == vertex;
        CHECK(found);
    }
    for (const auto& r : reps) CHECK(in_ccmp_k0(r.lambda));
    // (-1,-1) has two nonzeros so no ν with -ν ∈ N_{D_κ}(0) works.
    auto imp = check_stationarity(p, d, z, StationarityKind::Implicit);
    CHECK_FALSE(imp.holds);
    auto ex = check_stationarity_strata(p, d, z, StationarityKind::Explicit);
    CHECK(ex.forall);
    CHECK(ex.exists);
    for (const auto& v : ex.per_stratum) {
        check_witness(p, d, z, StationarityKind::Explicit, v);
        CHECK(is_zero(v.witness->mu));
    }
}

TEST_CASE("ccmp implicit system at (-1, 0)") {
    Vec z = V({-1, 0});
    // N_{D_κ}(z) = {0} x R: ∂f must have first coordinate zero.
    for (auto [c, expect] : {std::pair{V({1, 1}), false}, std::pair{V({0, 5}), true}}) {
        auto p = ccmp2_program(Objective::affine(c));
        auto d = build_derived(p);
        auto imp = check_stationarity(p, d, z, StationarityKind::Implicit);
        CHECK(imp.holds == expect);
        check_witness(p, d, z, StationarityKind::Implicit, imp);
        if (imp.holds) CHECK(imp.witness->nu[0] == 0);
        auto ex = check_stationarity_strata(p, d, z, StationarityKind::Explicit);
        CHECK(ex.strata.size() == 1);
        CHECK(ex.strata[0].lambda == V({0, 1}));
        CHECK(ex.forall == expect);
    }
}

TEST_CASE("qualification conditions on ccmp") {
    auto p = ccmp2_program(Objective::affine(V({1, 1})));
    auto d = build_derived(p);
    Vec z = V({0, 0});
    auto m1 = check_cq(p, d, z, CqKind::MordukhovichI);
    CHECK_FALSE(m1.holds);
    REQUIRE(m1.violation.has_value());
    CHECK_FALSE(is_zero(*m1.violation));
    bool polyhedral = false;
    for (const auto& c : m1.certificates) polyhedral = polyhedral || c.find("polyhedral") != std::string::npos;
    CHECK(polyhedral);
    for (const auto& r : k_stratum_representatives(p, d, z)) {
        auto inc = check_cq(p, d, z, CqKind::IncLambda, r.lambda);
        CHECK(inc.holds);
        bool equality = false;
        for (const auto& c : inc.certificates) equality = equality || c.find("equality") != std::string::npos;
        CHECK(equality);
    }
    CHECK_THROWS_AS(check_cq(p, d, z, CqKind::IncLambda), mstat::PreconditionError);
}

TEST_CASE("single-valued affine residual satisfies the metric-regularity qualification") {
    auto p = convex_program(Objective::affine(V({1})));
    // G(z,λ) = {λ - z}: single-valued affine.
    p.residual_map = PolyMapping(2, 1, uni({poly(3, {}, {{V({-1, 1, -1}), 0}})}));
    p.lambda_map = PolyMapping(1, 1, uni({poly(2, {{V({0, -1}), 0}})}));
    auto d = build_derived(p);
    Vec z = V({1});
    auto mr = check_cq(p, d, z, CqKind::MrCq, V({1}));
    CHECK(mr.holds);
    CHECK(check_cq(p, d, z, CqKind::StrongCq, V({1})).holds);
    CHECK(check_cq(p, d, z, CqKind::MordukhovichIII, V({1})).holds);
}

TEST_CASE("convex sufficiency on the one-dimensional program") {
    auto p = convex_program(Objective::affine(V({1})));
    auto d = build_derived(p);
    CHECK(is_convex_program(p));
    auto v = convex_sufficiency(p, d, V({0}));
    CHECK(v.holds);
    auto imp = check_stationarity(p, d, V({0}), StationarityKind::Implicit);
    REQUIRE(imp.holds);
    CHECK(imp.witness->nu == V({1}));
    CHECK_FALSE(convex_sufficiency(p, d, V({1})).holds);
    auto q = convex_program(Objective::quadratic({V({1})}, V({-2})));
    auto dq = build_derived(q);
    CHECK(convex_sufficiency(q, dq, V({2})).holds);
    auto nonconvex = ccmp2_program(Objective::affine(V({1, 1})));
    CHECK_THROWS_AS(convex_sufficiency(nonconvex, build_derived(nonconvex), V({0, 0})), mstat::PreconditionError);
}

TEST_CASE("fuzzy stationarity agrees with stationarity of the explicit problem") {
    struct Case {
        ImplicitProgram p;
        std::vector<Vec> points;
    };
    std::vector<Case> cases{{example_a_program(), {V({-1}), V({0}), V({1})}},
                            {ccmp2_program(Objective::affine(V({1, 1}))), {V({0, 0}), V({-1, 0}), V({0, 1})}},
                            {convex_program(Objective::affine(V({1}))), {V({0}), V({2})}}};
    for (auto& c : cases) {
        auto d = build_derived(c.p);
        for (const auto& z : c.points)
            for (const auto& r : k_stratum_representatives(c.p, d, z)) {
                auto fz = check_stationarity(c.p, d, z, StationarityKind::Fuzzy, r.lambda);
                auto ep = explicit_problem_stationarity(c.p, d, z, r.lambda);
                CHECK(fz.holds == ep.holds);
                check_witness(c.p, d, z, StationarityKind::Fuzzy, fz);
            }
    }
}

TEST_CASE("inc-lambda makes fuzzy imply explicit") {
    auto p = ccmp2_program(Objective::affine(V({0, 1})));
    auto d = build_derived(p);
    for (const auto& z : {V({0, 0}), V({1, 0}), V({0, -1})}) {
        for (const auto& r : k_stratum_representatives(p, d, z)) {
            if (!check_cq(p, d, z, CqKind::IncLambda, r.lambda).holds) continue;
            auto fz = check_stationarity(p, d, z, StationarityKind::Fuzzy, r.lambda);
            auto ex = check_stationarity(p, d, z, StationarityKind::Explicit, r.lambda);
            if (fz.holds) CHECK(ex.holds);
        }
    }
}

TEST_CASE("verdict json round trip re-verifies") {
    auto p = example_a_program();
    auto d = build_derived(p);
    auto v = check_stationarity(p, d, V({-1}), StationarityKind::Explicit, V({1}));
    auto back = verdict_from_json(to_json(v), "verdict");
    CHECK(back.holds == v.holds);
    REQUIRE(back.witness.has_value());
    CHECK(verify_witness(p, d, V({-1}), StationarityKind::Explicit, *back.witness));
    auto bad = to_json(v);
    bad["extra"] = 1;
    CHECK_THROWS_AS(verdict_from_json(bad, "verdict"), mstat::ParseError);
}

TEST_CASE("pipeline on ccmp at the origin") {
    auto p = ccmp2_program(Objective::affine(V({1, 1})));
    auto d = build_derived(p);
    auto r = run_pipeline(p, d, V({0, 0}));
    CHECK(r.consistent());
    CHECK(r.explicit_.forall);
    CHECK_FALSE(r.implicit.holds);
    CHECK(r.khat_locally_bounded);
    CHECK(r.branches.at('c') == "holds");
    CHECK(r.branches.at('d') == "holds");
    bool vacuous = false;
    for (const auto& e : r.edges)
        if (e.from.front() == "implicit") vacuous = vacuous || e.status == "premise fails";
    CHECK(vacuous);
    auto j = to_json(r);
    CHECK(j["status"]["implicit"] == "fails");
}

TEST_CASE("pipeline on example (a) at z = -1") {
    auto p = example_a_program();
    auto d = build_derived(p);
    auto r = run_pipeline(p, d, V({-1}));
    CHECK(r.consistent());
    CHECK(r.implicit.holds);
    CHECK(r.khat_locally_bounded);
    CHECK(r.explicit_.exists);
    CHECK(r.fuzzy.exists);
}

TEST_CASE("pipeline on the convex program reports global optimality") {
    auto p = convex_program(Objective::affine(V({1})));
    auto d = build_derived(p);
    auto r = run_pipeline(p, d, V({0}));
    CHECK(r.consistent());
    bool global = false;
    for (const auto& c : r.conclusions) global = global || c.find("global minimizer") != std::string::npos;
    CHECK(global);
}
