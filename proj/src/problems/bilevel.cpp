#include "mstat/problems/bilevel.hpp"

#include "mstat/core/errors.hpp"
#include "mstat/geometry/cones.hpp"
#include "mstat/stationarity/block_system.hpp"

namespace mstat::problems {

using namespace geometry;
using geometry::to_json;
using mappings::PolyMapping;
using stationarity::BlockSystem;

namespace {

void validate(const BilevelLqInstance& in) {
    const auto bad = [](const std::string& what) { throw StructuralError("bilevel_lq: " + what); };
    if (in.n1 == 0 || in.n2 == 0) bad("n1 and n2 must be positive");
    if (in.Q.size() != in.n2) bad("Q must be n2 x n2");
    for (const auto& r : in.Q)
        if (r.size() != in.n2) bad("Q must be n2 x n2");
    if (in.P.size() != in.n1) bad("P must be n1 x n2");
    for (const auto& r : in.P)
        if (r.size() != in.n2) bad("P must be n1 x n2");
    if (in.c.size() != in.n2) bad("c must have n2 entries");
    if (in.A.size() != in.m || in.b.size() != in.m) bad("A must be m x n2 and b must have m entries");
    for (const auto& r : in.A)
        if (r.size() != in.n2) bad("A must be m x n2");
    if (in.upper.dim() != in.n1 + in.n2) bad("upper objective must live on (x, y)");
    if (in.leader_set && in.leader_set->dim() != in.n1) bad("S must have dimension n1");
    for (std::size_t i = 0; i < in.n2; ++i)
        for (std::size_t j = 0; j < in.n2; ++j)
            if (in.Q[i][j] != in.Q[j][i]) bad("Q must be symmetric");
    if (!stationarity::is_psd(in.Q)) throw PreconditionError("bilevel_lq: Q is not positive semidefinite");
}

// ∇_y j(x,y) + Aᵀλ as a row block over (x, y, λ): entry i is row i.
Mat gradient_rows(const BilevelLqInstance& in) {
    const std::size_t n1 = in.n1, n2 = in.n2, m = in.m;
    Mat R = zero_matrix(n2, n1 + n2 + m);
    for (std::size_t i = 0; i < n2; ++i) {
        for (std::size_t k = 0; k < n1; ++k) R[i][k] = in.P[k][i];
        for (std::size_t k = 0; k < n2; ++k) R[i][n1 + k] = in.Q[i][k];
        for (std::size_t k = 0; k < m; ++k) R[i][n1 + n2 + k] = in.A[k][i];
    }
    return R;
}

PolyUnion leader_set(const BilevelLqInstance& in) { return in.leader_set ? *in.leader_set : PolyUnion(ConvexPolyhedron::universe(in.n1)); }

}  // namespace

PolyUnion complementarity_graph(std::size_t m) {
    std::vector<ConvexPolyhedron> pieces;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        ConvexPolyhedron P(2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            if (mask >> i & 1) {
                P.add_eq(unit(2 * m, i), 0);
                P.add_ineq(neg(unit(2 * m, m + i)), 0);
            } else {
                P.add_ineq(unit(2 * m, i), 0);
                P.add_eq(unit(2 * m, m + i), 0);
            }
        }
        pieces.push_back(std::move(P));
    }
    return PolyUnion(2 * m, pieces);
}

BilevelBundle build_bilevel_lq(const BilevelLqInstance& in) {
    validate(in);
    const std::size_t n1 = in.n1, n2 = in.n2, m = in.m, n = n1 + n2;
    BilevelBundle out;
    ImplicitProgram& p = out.program;
    p.n = n;
    p.m = m;
    p.s = n2;
    p.objective = in.upper;
    p.base_set = geometry::product(leader_set(in), PolyUnion(ConvexPolyhedron::universe(n2)));

    // (x, y, λ) ↦ (Ay - b, λ) ∈ complementarity graph
    Mat T = zero_matrix(2 * m, n + m);
    Vec t = zeros(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < n2; ++k) T[i][n1 + k] = in.A[i][k];
        t[i] = -in.b[i];
        T[m + i][n + i] = 1;
    }
    const auto comp = complementarity_graph(m);
    p.lambda_map = PolyMapping(n, m, affine_preimage(comp, T, t, n + m));

    // w = Qy + Pᵀx + c + Aᵀλ
    Mat R = gradient_rows(in);
    ConvexPolyhedron G(n + m + n2);
    for (std::size_t i = 0; i < n2; ++i) {
        Vec row = R[i];
        row.resize(n + m + n2);
        row[n + m + i] = -1;
        G.add_eq(std::move(row), -in.c[i]);
    }
    p.residual_map = PolyMapping(n + m, n2, PolyUnion(G));
    p.validate();

    ConvexPolyhedron eq(n + m);
    for (std::size_t i = 0; i < n2; ++i) eq.add_eq(R[i], -in.c[i]);
    auto lifted_s = geometry::product(leader_set(in), PolyUnion(ConvexPolyhedron::universe(n2 + m)));
    out.mpcc.feasible = intersect(intersect(lifted_s, PolyUnion(eq)), p.lambda_map.graph());
    out.mpcc.complementarity = comp;
    return out;
}

PolyUnion lower_level_multipliers(const BilevelLqInstance& in, const Vec& x, const Vec& y) {
    auto bundle = build_bilevel_lq(in);
    auto d = stationarity::build_derived(bundle.program);
    return image_at(d.intermediate, concat(x, y));
}

Verdict fully_explicit_stationarity(const BilevelLqInstance& in, const Vec& x, const Vec& y, const Vec& lambda) {
    const std::size_t n1 = in.n1, n2 = in.n2, m = in.m;
    auto K = lower_level_multipliers(in, x, y);
    if (!leader_set(in).contains(x)) throw PreconditionError("fully_explicit_stationarity: x ∉ S");
    if (K.is_empty() || !K.contains(lambda)) throw PreconditionError("fully_explicit_stationarity: λ is not a lower-level multiplier at (x, y)");
    const Vec a = sub(mat_vec(in.A, y), in.b);
    auto Ncomp = limiting_normal_cone(complementarity_graph(m), concat(a, lambda));
    auto NS = limiting_normal_cone(leader_set(in), x);
    auto subd = stationarity::subdifferential_at(in.upper, concat(x, y));

    BlockSystem B;
    auto gx = B.add(n1), gy = B.add(n2), nu = B.add(n2), mu = B.add(m), na = B.add(m), zeta = B.add(n1);
    Verdict v;
    v.kind = "fully_explicit";
    for (const auto& Cp : Ncomp.pieces()) {
        for (const auto& Sp : NS.pieces()) {
            auto sys = B.base();
            B.place(sys, subd, {gx, gy});
            B.place(sys, Cp, {mu, na});
            B.place(sys, Sp, {zeta});
            // na = -Aν
            for (std::size_t i = 0; i < m; ++i) {
                Vec row = zeros(B.dim());
                row[B.offset(na) + i] = 1;
                for (std::size_t k = 0; k < n2; ++k) row[B.offset(nu) + k] = in.A[i][k];
                sys.add_eq(std::move(row), 0);
            }
            // gx + Pν + ζ = 0
            for (std::size_t i = 0; i < n1; ++i) {
                Vec row = zeros(B.dim());
                row[B.offset(gx) + i] = 1;
                row[B.offset(zeta) + i] = 1;
                for (std::size_t k = 0; k < n2; ++k) row[B.offset(nu) + k] = in.P[i][k];
                sys.add_eq(std::move(row), 0);
            }
            // gy + Qν + Aᵀμ = 0
            for (std::size_t i = 0; i < n2; ++i) {
                Vec row = zeros(B.dim());
                row[B.offset(gy) + i] = 1;
                for (std::size_t k = 0; k < n2; ++k) row[B.offset(nu) + k] = in.Q[i][k];
                for (std::size_t k = 0; k < m; ++k) row[B.offset(mu) + k] = in.A[k][i];
                sys.add_eq(std::move(row), 0);
            }
            auto f = lp_feasible(sys);
            if (!f.feasible) continue;
            const Vec& w = *f.witness;
            v.holds = true;
            v.witness = stationarity::Witness{lambda, B.value(w, mu), B.value(w, nu), {}, concat(B.value(w, gx), B.value(w, gy)),
                                              concat(B.value(w, zeta), zeros(n2))};
            break;
        }
        if (v.holds) break;
    }
    v.certificates.push_back("m-stationarity of the complementarity reformulation via the limiting normal cone of the complementarity graph");
    v.certificates.push_back("polyhedral-subregularity: the reformulation's feasibility mapping is polyhedral");
    return v;
}

MultiplierReport bilevel_multiplier_conditions(const BilevelLqInstance& in, const Vec& x, const Vec& y, const Vec& lambda) {
    const std::size_t m = in.m;
    auto K = lower_level_multipliers(in, x, y);
    if (K.is_empty() || !K.contains(lambda)) throw PreconditionError("bilevel_multiplier_conditions: λ is not a lower-level multiplier at (x, y)");
    const Vec g = sub(mat_vec(in.A, y), in.b);
    const Mat At = transpose(in.A, in.n2);
    MultiplierReport r;

    // Aᵀλ = 0, gᵀλ = 0, λ ∈ (C ∩ λ̄^⊥)°: λ_i >= 0 where λ̄_i = 0.
    ConvexPolyhedron cone(m);
    for (const auto& row : At) cone.add_eq(row, 0);
    cone.add_eq(g, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (lambda[i] == 0) cone.add_ineq(neg(unit(m, i)), 0);
    r.strict_mf = vanishes_on(cone, {});

    // Rows of A active at y are linearly independent.
    Mat active;
    for (std::size_t i = 0; i < m; ++i)
        if (g[i] == 0) active.push_back(in.A[i]);
    r.licq = rank(active) == active.size();

    r.multiplier_singleton = true;
    for (const auto& P : K.pieces()) r.multiplier_singleton = r.multiplier_singleton && vanishes_on(affine_preimage(P, identity(m), lambda, m), {});

    r.certificates.push_back(std::string("strict Mangasarian-Fromovitz condition: ") + (r.strict_mf ? "holds" : "fails"));
    r.certificates.push_back(std::string("non-degeneracy (LICQ): ") + (r.licq ? "holds" : "fails"));
    if (r.licq) r.certificates.push_back("non-degeneracy implies the strict Mangasarian-Fromovitz condition");
    if (r.strict_mf) r.certificates.push_back("strict Mangasarian-Fromovitz condition implies K(x,y) = {λ} and inner semicontinuity of K");
    r.certificates.push_back(std::string("multiplier set is ") + (r.multiplier_singleton ? "a singleton" : "not a singleton"));
    return r;
}

json to_json(const MultiplierReport& r) {
    return json{{"strict_mf", r.strict_mf}, {"licq", r.licq}, {"multiplier_singleton", r.multiplier_singleton}, {"certificates", r.certificates}};
}

}  // namespace mstat::problems
