#include "mstat/problems/emop.hpp"

#include "mstat/core/errors.hpp"

namespace mstat::problems {

using namespace geometry;
using mappings::PolyMapping;

PolyUnion scalarized_solution_graph(const Mat& J, const ConvexPolyhedron& G) {
    const std::size_t m = J.size(), n = G.dim;
    const std::size_t p = G.A.size(), q = G.E.size();
    if (p > 16) throw ResourceLimitError("emop_linear: too many inequality rows for pattern enumeration");
    // variables (λ, u, μ_ineq, μ_eq)
    const std::size_t dim = m + n + p + q;
    std::vector<ConvexPolyhedron> pieces;
    for (unsigned long mask = 0; mask < (1ul << p); ++mask) {
        ConvexPolyhedron P(dim);
        Vec sum = zeros(dim);
        for (std::size_t k = 0; k < m; ++k) {
            P.add_ineq(neg(unit(dim, k)), 0);
            sum[k] = 1;
        }
        P.add_eq(sum, 1);
        for (std::size_t i = 0; i < p; ++i) {
            Vec row = zeros(dim);
            for (std::size_t j = 0; j < n; ++j) row[m + j] = G.A[i][j];
            if (mask >> i & 1) {
                P.add_eq(row, G.b[i]);
                P.add_ineq(neg(unit(dim, m + n + i)), 0);
            } else {
                P.add_ineq(row, G.b[i]);
                P.add_eq(unit(dim, m + n + i), 0);
            }
        }
        for (std::size_t i = 0; i < q; ++i) {
            Vec row = zeros(dim);
            for (std::size_t j = 0; j < n; ++j) row[m + j] = G.E[i][j];
            P.add_eq(row, G.d[i]);
        }
        // Jᵀλ + Aᵀμ + Eᵀμ_eq = 0
        for (std::size_t j = 0; j < n; ++j) {
            Vec row = zeros(dim);
            for (std::size_t k = 0; k < m; ++k) row[k] = J[k][j];
            for (std::size_t i = 0; i < p; ++i) row[m + n + i] = G.A[i][j];
            for (std::size_t i = 0; i < q; ++i) row[m + n + p + i] = G.E[i][j];
            P.add_eq(row, 0);
        }
        if (is_empty(P)) continue;
        std::vector<std::size_t> mus;
        for (std::size_t i = 0; i < p + q; ++i) mus.push_back(m + n + i);
        pieces.push_back(simplify(project_out(P, mus)));
    }
    return prune(PolyUnion::from_pieces(m + n, pieces));
}

stationarity::ImplicitProgram build_emop_linear(const Mat& J, const ConvexPolyhedron& G) {
    const std::size_t m = J.size(), n = G.dim;
    if (m < 2) throw PreconditionError("emop_linear: at least two objectives are required");
    for (const auto& r : J)
        if (r.size() != n) throw StructuralError("emop_linear: J must have one column per variable");
    G.validate();
    if (is_empty(G)) throw PreconditionError("emop_linear: Γ is empty");
    if (!is_bounded(G)) throw PreconditionError("emop_linear: Γ must be bounded");

    stationarity::ImplicitProgram p;
    p.n = n;
    p.m = m;
    p.s = n;
    p.objective = stationarity::Objective::affine(zeros(n));
    p.base_set = PolyUnion(ConvexPolyhedron::universe(n));
    ConvexPolyhedron simplex(n + m);
    Vec sum = zeros(n + m);
    for (std::size_t k = 0; k < m; ++k) {
        simplex.add_ineq(neg(unit(n + m, n + k)), 0);
        sum[n + k] = 1;
    }
    simplex.add_eq(sum, 1);
    p.lambda_map = PolyMapping(n, m, PolyUnion(simplex));

    // (z, λ, w) with (λ, w + z) ∈ gph Ψ
    auto psi = scalarized_solution_graph(J, G);
    Mat T = zero_matrix(m + n, n + m + n);
    for (std::size_t k = 0; k < m; ++k) T[k][n + k] = 1;
    for (std::size_t j = 0; j < n; ++j) T[m + j][j] = T[m + j][n + m + j] = 1;
    p.residual_map = PolyMapping(n + m, n, affine_preimage(psi, T, zeros(m + n), n + m + n));
    p.validate();
    return p;
}

}  // namespace mstat::problems
