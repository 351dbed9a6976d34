#pragma once

// Seeded property suites. Each returns how many cases were checked and how many failed.

#include "oracles.hpp"

#include "mstat/problems/ccmp.hpp"
#include "mstat/problems/examples.hpp"
#include "mstat/stationarity/sampling.hpp"
#include "mstat/stationarity/verdict.hpp"

#include <sstream>

namespace testsupport {

using namespace mstat::geometry;
namespace st = mstat::stationarity;

constexpr std::uint64_t kPropertySeed = 20240611;

struct PropertyResult {
    explicit PropertyResult(std::string n) : name(std::move(n)) {}

    std::string name;
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::size_t skipped = 0;
    std::string first_failure;

    void record(bool ok, const std::string& what) {
        ++checked;
        if (ok) return;
        if (failures++ == 0) first_failure = what;
    }
    bool ok() const { return checked > 0 && failures == 0; }
};

inline Vec random_int_vec(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    Vec v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(dist(rng));
    return v;
}

inline Vec random_nonzero_int_vec(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    Vec v;
    do v = random_int_vec(rng, n, lo, hi);
    while (mstat::is_zero(v));
    return v;
}

inline ConvexPolyhedron box(std::size_t n, const Rational& r) {
    ConvexPolyhedron P(n);
    for (std::size_t i = 0; i < n; ++i) {
        P.add_ineq(mstat::unit(n, i), r);
        P.add_ineq(mstat::neg(mstat::unit(n, i)), r);
    }
    return P;
}

/// polar(polar(C)) = C for random closed convex cones given by inequality and equality rows.
inline PropertyResult polar_biduality(std::uint64_t seed, std::size_t trials = 60) {
    PropertyResult r{"polar biduality"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim_pick(2, 3), rows_pick(0, 4), eq_pick(0, 3);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = dim_pick(rng);
        ConvexPolyhedron C(n);
        for (int i = rows_pick(rng); i > 0; --i) C.add_ineq(random_nonzero_int_vec(rng, n, -3, 3), 0);
        if (eq_pick(rng) == 0) C.add_eq(random_nonzero_int_vec(rng, n, -2, 2), 0);
        auto twice = polar_cone(polar_cone(C));
        std::ostringstream os;
        os << "trial " << t << " in dimension " << n;
        r.record(equal_sets(twice, C), os.str());
    }
    return r;
}

/// x in project_out(P) exactly when the slice of P over x is nonempty.
inline PropertyResult projection_membership(std::uint64_t seed, std::size_t samples = 1000) {
    PropertyResult r{"projection membership"};
    std::mt19937_64 rng(seed);
    const std::size_t n = 4, per_polytope = 100;
    for (std::size_t k = 0; r.checked < samples; ++k) {
        ConvexPolyhedron P = box(n, 3);
        for (int i = 0; i < 3; ++i) P.add_ineq(random_nonzero_int_vec(rng, n, -3, 3), Rational(std::uniform_int_distribution<long>(-2, 4)(rng)));
        if (k % 3 == 0) P.add_eq(random_nonzero_int_vec(rng, n, -2, 2), 0);
        const std::vector<std::size_t> gone = k % 2 == 0 ? std::vector<std::size_t>{2, 3} : std::vector<std::size_t>{0, 2};
        const std::vector<std::size_t> kept = k % 2 == 0 ? std::vector<std::size_t>{0, 1} : std::vector<std::size_t>{1, 3};
        auto proj = project_out(P, gone);
        for (std::size_t s = 0; s < per_polytope && r.checked < samples; ++s) {
            Vec x = random_vec(rng, 2, -4, 4, 4);
            bool slice_nonempty = lp_feasible(fix_coordinates(P, kept, x)).feasible;
            r.record(proj.contains(x) == slice_nonempty, "polytope " + std::to_string(k) + " at " + mstat::to_string(x));
        }
    }
    return r;
}

/// Every regular normal found at sampled union points within radius 2^-k of the base point
/// lies in the computed limiting normal cone, for k = 1..10.
inline PropertyResult stratification_soundness(std::uint64_t seed, std::size_t unions = 12) {
    PropertyResult r{"stratification soundness"};
    std::mt19937_64 rng(seed);
    for (std::size_t u = 0; u < unions; ++u) {
        const std::size_t n = u % 3 == 2 ? 3 : 2;
        std::vector<ConvexPolyhedron> pieces;
        const int count = 2 + static_cast<int>(u % 2);
        for (int i = 0; i < count; ++i) {
            ConvexPolyhedron P = box(n, 1);
            for (int j = 0; j < 2; ++j) P.add_ineq(random_nonzero_int_vec(rng, n, -3, 3), 0);
            P.add_ineq(random_nonzero_int_vec(rng, n, -3, 3), Q(1, 2));
            if (!lp_feasible(P).feasible) continue;
            pieces.push_back(P);
        }
        if (pieces.empty()) continue;
        PolyUnion U(n, pieces);
        const Vec origin = mstat::zeros(n);
        auto N = limiting_normal_cone(U, origin);
        const auto candidates = integer_box(n, 2);
        // Below this ∞-norm radius no row that is slack at the origin can be active.
        Rational local_radius = 1;
        for (const auto& P : U.pieces())
            for (std::size_t i = 0; i < P.A.size(); ++i) {
                if (P.b[i] <= 0) continue;
                Rational l1 = 0;
                for (const auto& a : P.A[i]) l1 += abs(a);
                local_radius = std::min(local_radius, Rational(P.b[i] / l1));
            }
        for (int k = 1; k <= 10; ++k) {
            const Rational radius(1, 1L << k);
            if (radius >= local_radius) {
                ++r.skipped;
                continue;
            }
            std::vector<Vec> pts;
            for (const auto& P : U.pieces()) {
                auto local = intersect(P, box(n, radius));
                for (int t = 0; t < 3; ++t) {
                    auto res = maximize(local, random_nonzero_int_vec(rng, n, -3, 3));
                    if (res.status == LpStatus::Optimal) pts.push_back(res.x);
                }
            }
            for (int t = 0; t < 6; ++t) {
                Vec p = mstat::scale(radius, random_vec(rng, n, -1, 1, 8));
                if (U.contains(p)) pts.push_back(p);
            }
            for (const auto& p : pts)
                for (const auto& y : candidates) {
                    if (!regular_normal_oracle(U, p, y)) continue;
                    r.record(N.contains(y), "union " + std::to_string(u) + ", k = " + std::to_string(k) + ", point " + mstat::to_string(p) +
                                                ", normal " + mstat::to_string(y));
                }
        }
    }
    return r;
}

struct ProgramAt {
    std::string label;
    st::ImplicitProgram program;
    std::vector<Vec> points;
};

inline std::vector<ProgramAt> verification_programs() {
    std::vector<ProgramAt> out;
    out.push_back({"example (a)", mstat::problems::build_example_a(), {V({-1}), Vec{Q(-1, 2)}, V({0}), V({1}), V({3})}});
    mstat::problems::CcmpInstance c2{2, 1, st::Objective::affine(V({1, 1})), std::nullopt};
    out.push_back({"ccmp n=2", mstat::problems::build_ccmp(c2).program, {}});
    for (const auto& z : integer_box(2, 1))
        if (z[0] == 0 || z[1] == 0) out.back().points.push_back(z);
    mstat::problems::CcmpInstance c2q{2, 1, st::Objective::max_affine({V({1, 0}), V({-1, 0}), V({0, 1}), V({0, -1})}, V({0, 0, 0, 0})), std::nullopt};
    out.push_back({"ccmp n=2 with a polyhedral norm", mstat::problems::build_ccmp(c2q).program, {V({0, 0}), V({1, 0})}});
    return out;
}

/// Every holds-verdict's witness re-verifies, directly and after a JSON round trip.
inline PropertyResult witness_reverification() {
    PropertyResult r{"witness re-verification"};
    for (const auto& [label, p, points] : verification_programs()) {
        auto d = st::build_derived(p);
        for (const auto& z : points) {
            const std::string at = label + " at " + mstat::to_string(z);
            std::vector<std::pair<st::StationarityKind, st::Verdict>> verdicts;
            verdicts.push_back({st::StationarityKind::Implicit, st::check_stationarity(p, d, z, st::StationarityKind::Implicit)});
            for (auto kind : {st::StationarityKind::Fuzzy, st::StationarityKind::Explicit})
                for (const auto& v : st::check_stationarity_strata(p, d, z, kind).per_stratum) verdicts.push_back({kind, v});
            for (const auto& [kind, v] : verdicts) {
                if (!v.holds) continue;
                r.record(v.witness.has_value() && st::verify_witness(p, d, z, kind, *v.witness), at + " " + v.kind);
                auto back = st::verdict_from_json(json::parse(st::to_json(v).dump()), "verdict");
                r.record(back.holds && back.witness && st::verify_witness(p, d, z, kind, *back.witness), at + " " + v.kind + " after JSON");
            }
        }
    }
    return r;
}

/// Verdicts at sampled multipliers equal the verdict at their stratum's representative.
inline PropertyResult strata_sufficiency(std::uint64_t seed, std::size_t samples = 100) {
    PropertyResult r{"strata sufficiency"};
    auto programs = verification_programs();
    struct Case {
        const ProgramAt* prog;
        Vec z;
    };
    std::vector<Case> cases{{&programs[0], V({0})}, {&programs[1], V({0, 0})}, {&programs[2], V({0, 0})}};
    const std::size_t per_case = (samples + cases.size() - 1) / cases.size();
    std::size_t drawn = 0;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& p = cases[c].prog->program;
        const Vec& z = cases[c].z;
        auto d = st::build_derived(p);
        const std::size_t want = std::min(per_case, samples - drawn);
        drawn += want;
        for (auto kind : {st::StationarityKind::Explicit, st::StationarityKind::Fuzzy}) {
            auto sv = st::check_stationarity_strata(p, d, z, kind);
            for (const auto& s : st::sample_strata(p, d, z, want, seed + c)) {
                bool rep = false;
                for (std::size_t i = 0; i < sv.strata.size(); ++i)
                    if (sv.strata[i].id == s.stratum) rep = sv.per_stratum[i].holds;
                bool inside = st::stratum_of(p, d, z, s.lambda) == s.stratum;
                bool here = st::check_stationarity(p, d, z, kind, s.lambda).holds;
                r.record(inside && here == rep, cases[c].prog->label + " " + st::to_string(kind) + " at lambda " + mstat::to_string(s.lambda));
            }
        }
    }
    return r;
}

}  // namespace testsupport
