#include "mstat/problems/ccmp.hpp"

#include "mstat/core/errors.hpp"
#include "mstat/geometry/cones.hpp"
#include "mstat/stationarity/block_system.hpp"

namespace mstat::problems {

using namespace geometry;
using geometry::to_json;
using mappings::PolyMapping;
using stationarity::BlockSystem;

namespace {

// Subsets of {0..n-1} of size k, as index lists.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

// {x ∈ R^n : x_i = 0 for i ∉ support}
ConvexPolyhedron coordinate_subspace(std::size_t n, const std::vector<std::size_t>& support) {
    ConvexPolyhedron P(n);
    std::vector<bool> in(n, false);
    for (auto i : support) in[i] = true;
    for (std::size_t i = 0; i < n; ++i)
        if (!in[i]) P.add_eq(unit(n, i), 0);
    return P;
}

PolyUnion sparsity_set(std::size_t n, std::size_t kappa) {
    std::vector<ConvexPolyhedron> pieces;
    for (const auto& T : subsets(n, kappa)) pieces.push_back(coordinate_subspace(n, T));
    return PolyUnion(n, pieces);
}

}  // namespace

std::vector<std::size_t> nonzero_indices(const Vec& z) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] != 0) out.push_back(i);
    return out;
}

std::vector<std::size_t> zero_indices(const Vec& z) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] == 0) out.push_back(i);
    return out;
}

CcmpBundle build_ccmp(const CcmpInstance& in) {
    const std::size_t n = in.n;
    if (n < 2 || n > 4) throw PreconditionError("ccmp: n must lie in 2..4 (got " + std::to_string(n) + ")");
    if (in.kappa < 1 || in.kappa > n - 1) throw PreconditionError("ccmp: κ must lie in 1..n-1 (got " + std::to_string(in.kappa) + ")");
    if (in.objective.dim() != n) throw StructuralError("ccmp: objective dimension must be n");
    if (in.base_set && in.base_set->dim() != n) throw StructuralError("ccmp: M must have dimension n");

    CcmpBundle out;
    ImplicitProgram& p = out.program;
    p.n = n;
    p.m = n;
    p.s = 2 * n;
    p.objective = in.objective;
    p.base_set = in.base_set ? *in.base_set : PolyUnion(ConvexPolyhedron::universe(n));

    // F(z) ≡ {λ : eᵀλ >= n - κ}
    ConvexPolyhedron F(2 * n);
    Vec row = zeros(2 * n);
    for (std::size_t i = 0; i < n; ++i) row[n + i] = -1;
    F.add_ineq(row, -Rational(static_cast<long>(n - in.kappa)));
    p.lambda_map = PolyMapping(n, n, PolyUnion(F));

    // G(z,λ) = ∏ (C - (z_i, λ_i)), C = ({0} x [0,1]) ∪ (R x {0}); w = (a_1, b_1, ..., a_n, b_n).
    const std::size_t dim = 4 * n;
    std::vector<ConvexPolyhedron> pieces;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        ConvexPolyhedron P(dim);
        for (std::size_t i = 0; i < n; ++i) {
            Vec a = zeros(dim), b = zeros(dim);
            a[i] = 1;
            a[2 * n + 2 * i] = 1;
            b[n + i] = 1;
            b[2 * n + 2 * i + 1] = 1;
            if (mask >> i & 1) {
                P.add_eq(a, 0);
                P.add_ineq(neg(b), 0);
                P.add_ineq(b, 1);
            } else {
                P.add_eq(b, 0);
            }
        }
        pieces.push_back(std::move(P));
    }
    p.residual_map = PolyMapping(2 * n, 2 * n, PolyUnion(dim, pieces));

    out.sparsity_set = sparsity_set(n, in.kappa);
    // z ⇒ D_κ - z, same zero set as the aggregate.
    std::vector<ConvexPolyhedron> agg;
    for (const auto& D : out.sparsity_set.pieces()) {
        Mat T = zero_matrix(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) T[i][i] = T[i][n + i] = 1;
        agg.push_back(affine_preimage(D, T, zeros(n), 2 * n));
    }
    p.implicit_aggregate = PolyMapping(n, n, PolyUnion(2 * n, agg));
    p.validate();
    return out;
}

PolyUnion closed_form_multipliers(const CcmpInstance& in, const Vec& z) {
    const std::size_t n = in.n;
    ConvexPolyhedron K(n);
    for (std::size_t i = 0; i < n; ++i) {
        K.add_ineq(neg(unit(n, i)), 0);
        K.add_ineq(unit(n, i), 1);
    }
    Vec row = zeros(n);
    for (auto i : zero_indices(z)) row[i] = -1;
    K.add_ineq(row, -Rational(static_cast<long>(n - in.kappa)));
    for (auto i : nonzero_indices(z)) K.add_eq(unit(n, i), 0);
    return PolyUnion::from_pieces(n, {K});
}

PolyUnion closed_form_normal_cone(const CcmpInstance& in, const Vec& z) {
    const std::size_t n = in.n;
    const auto zero = zero_indices(z);
    const std::size_t budget = std::min(n - in.kappa, zero.size());
    std::vector<ConvexPolyhedron> pieces;
    for (const auto& pick : subsets(zero.size(), budget)) {
        std::vector<std::size_t> support;
        for (auto k : pick) support.push_back(zero[k]);
        pieces.push_back(coordinate_subspace(n, support));
    }
    return PolyUnion(n, pieces);
}

bool closed_form_explicit(const CcmpInstance& in, const Vec& z) {
    const std::size_t n = in.n;
    const PolyUnion M = in.base_set ? *in.base_set : PolyUnion(ConvexPolyhedron::universe(n));
    auto NM = limiting_normal_cone(M, z);
    auto sub = stationarity::subdifferential_at(in.objective, z);
    BlockSystem B;
    auto g = B.add(n), nu = B.add(n), zeta = B.add(n);
    for (const auto& Np : NM.pieces()) {
        auto sys = B.base();
        B.place(sys, sub, {g});
        B.place(sys, Np, {zeta});
        B.place(sys, coordinate_subspace(n, zero_indices(z)), {nu});
        B.linear_zero(sys, {{g, 1}, {nu, 1}, {zeta, 1}});
        if (lp_feasible(sys).feasible) return true;
    }
    return false;
}

CcmpCrossCheck ccmp_cross_check(const CcmpInstance& in, const CcmpBundle& bundle, const DerivedMaps& d, const Vec& z) {
    stationarity::require_feasible(bundle.program, d, z);
    CcmpCrossCheck r;
    r.normal_cone_equal = equal_unions(closed_form_normal_cone(in, z), limiting_normal_cone(bundle.sparsity_set, z));
    auto K = image_at(d.intermediate, z);
    r.multipliers_equal = equal_unions(closed_form_multipliers(in, z), K);
    auto sv = stationarity::check_stationarity_strata(bundle.program, d, z, stationarity::StationarityKind::Explicit);
    r.strata = sv.strata.size();
    r.explicit_constant_over_strata = sv.exists == sv.forall;
    r.explicit_matches_closed_form = sv.forall == closed_form_explicit(in, z);
    r.multipliers_locally_bounded = mappings::locally_bounded_at(d.intermediate, z);
    bool singleton = true;
    const Vec x = *lp_feasible(K.pieces()[0]).witness;
    for (const auto& P : K.pieces()) singleton = singleton && vanishes_on(affine_preimage(P, identity(in.n), x, in.n), {});
    r.singleton_iff_full_support = singleton == (nonzero_indices(z).size() == in.kappa);
    return r;
}

json to_json(const CcmpCrossCheck& r) {
    return json{{"normal_cone_equal", r.normal_cone_equal},
                {"multipliers_equal", r.multipliers_equal},
                {"explicit_constant_over_strata", r.explicit_constant_over_strata},
                {"explicit_matches_closed_form", r.explicit_matches_closed_form},
                {"multipliers_locally_bounded", r.multipliers_locally_bounded},
                {"singleton_iff_full_support", r.singleton_iff_full_support},
                {"strata", r.strata},
                {"all_pass", r.all_pass()}};
}

}  // namespace mstat::problems
