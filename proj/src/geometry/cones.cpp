#include "mstat/geometry/cones.hpp"

#include "mstat/core/errors.hpp"

#include <map>
#include <numeric>

namespace mstat::geometry {

ConeUnion tangent_cone(const PolyUnion& U, const Vec& x) {
    if (x.size() != U.dim()) throw StructuralError("tangent_cone: point dimension mismatch");
    std::vector<ConvexPolyhedron> out;
    for (const auto& P : U.pieces()) {
        if (!P.contains(x)) continue;
        ConvexPolyhedron T(P.dim);
        for (std::size_t i = 0; i < P.A.size(); ++i)
            if (dot(P.A[i], x) == P.b[i]) T.add_ineq(P.A[i], Rational(0));
        for (const auto& e : P.E) T.add_eq(e, Rational(0));
        out.push_back(std::move(T));
    }
    if (out.empty()) throw PreconditionError("tangent_cone: point " + to_string(x) + " is not in the set");
    return PolyUnion(U.dim(), std::move(out));
}

PolyCone polar_cone(const PolyCone& C) {
    C.validate();
    if (!C.is_homogeneous()) throw StructuralError("polar_cone: piece is not a cone");
    const std::size_t n = C.dim, ma = C.A.size(), me = C.E.size();
    // Generators of the polar are the rows of A (nonnegative) and of E (free).
    ConvexPolyhedron L(n + ma + me);
    for (std::size_t i = 0; i < n; ++i) {
        Vec row = zeros(n + ma + me);
        row[i] = 1;
        for (std::size_t k = 0; k < ma; ++k) row[n + k] = -C.A[k][i];
        for (std::size_t k = 0; k < me; ++k) row[n + ma + k] = -C.E[k][i];
        L.add_eq(std::move(row), Rational(0));
    }
    for (std::size_t k = 0; k < ma; ++k) {
        Vec row = zeros(n + ma + me);
        row[n + k] = -1;
        L.add_ineq(std::move(row), Rational(0));
    }
    std::vector<std::size_t> elim(ma + me);
    std::iota(elim.begin(), elim.end(), n);
    return project_out(L, elim);
}

PolyCone polar_cone(const ConeUnion& C) {
    if (C.is_empty()) return ConvexPolyhedron::universe(C.dim());
    ConvexPolyhedron out = polar_cone(C.pieces().front());
    for (std::size_t i = 1; i < C.size(); ++i) out = intersect(out, polar_cone(C.pieces()[i]));
    return simplify(out);
}

PolyCone regular_normal_cone(const PolyUnion& U, const Vec& x) { return polar_cone(tangent_cone(U, x)); }

ConeUnion limiting_normal_cone(const PolyUnion& U, const Vec& x) {
    ConeUnion T = tangent_cone(U, x);
    if (T.size() == 1) return PolyUnion(polar_cone(T));
    std::vector<Hyperplane> hs;
    for (const auto& P : T.pieces()) {
        for (const auto& a : P.A) hs.push_back({a, Rational(0)});
        for (const auto& e : P.E) hs.push_back({e, Rational(0)});
    }
    hs = normalize_hyperplanes(hs);
    // Strata inside T; the regular normal cone is constant on each of them.
    std::map<std::vector<int>, Vec> strata;
    for (const auto& P : T.pieces())
        for (auto& c : arrangement_cells(P, hs, true)) strata.emplace(std::move(c.signs), std::move(c.point));
    std::vector<ConvexPolyhedron> normals;
    for (const auto& [signs, point] : strata) normals.push_back(regular_normal_cone(T, point));
    return prune(PolyUnion(U.dim(), std::move(normals)));
}

Containment contains_union(const PolyUnion& L, const PolyUnion& R) {
    if (L.dim() != R.dim()) throw StructuralError("contains_union: dimension mismatch");
    Containment res;
    for (const auto& P : L.pieces()) {
        bool single = false;
        for (const auto& Q : R.pieces())
            if (contains(Q, P)) {
                single = true;
                break;
            }
        if (single) continue;
        std::vector<const ConvexPolyhedron*> relevant;
        std::vector<Hyperplane> hs;
        for (const auto& Q : R.pieces()) {
            if (is_empty(intersect(P, Q))) continue;
            relevant.push_back(&Q);
            for (std::size_t i = 0; i < Q.A.size(); ++i) hs.push_back({Q.A[i], Q.b[i]});
            for (std::size_t i = 0; i < Q.E.size(); ++i) hs.push_back({Q.E[i], Q.d[i]});
        }
        if (relevant.empty()) {
            res.witness = lp_feasible(P).witness;
            return res;
        }
        hs = normalize_hyperplanes(hs);
        for (const auto& c : arrangement_cells(P, hs, false)) {
            bool covered = false;
            for (const auto* Q : relevant)
                if (Q->contains(c.point)) {
                    covered = true;
                    break;
                }
            if (!covered) {
                res.witness = c.point;
                return res;
            }
        }
    }
    res.holds = true;
    return res;
}

bool equal_unions(const PolyUnion& L, const PolyUnion& R) {
    if (L.is_empty() || R.is_empty()) return L.is_empty() && R.is_empty();
    return contains_union(L, R).holds && contains_union(R, L).holds;
}

ConvexPolyhedron minkowski_sum(const ConvexPolyhedron& P, const ConvexPolyhedron& Q) {
    if (P.dim != Q.dim) throw StructuralError("minkowski_sum: dimension mismatch");
    const std::size_t n = P.dim;
    // {(x,u) : u in P, x - u in Q}, then eliminate u.
    std::vector<std::size_t> wu(n);
    std::iota(wu.begin(), wu.end(), n);
    ConvexPolyhedron L = embed(P, 2 * n, wu);
    Mat T = zero_matrix(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        T[i][i] = 1;
        T[i][n + i] = -1;
    }
    L = intersect(L, affine_preimage(Q, T, zeros(n), 2 * n));
    return project_out(L, wu);
}

PolyUnion minkowski_sum(const PolyUnion& L, const PolyUnion& R) {
    if (L.dim() != R.dim()) throw StructuralError("minkowski_sum: dimension mismatch");
    if (L.is_empty() || R.is_empty()) return PolyUnion::empty_set(L.dim());
    require_pieces(L.size() * R.size(), "minkowski_sum");
    std::vector<ConvexPolyhedron> out;
    for (const auto& P : L.pieces())
        for (const auto& Q : R.pieces()) out.push_back(minkowski_sum(P, Q));
    return PolyUnion::from_pieces(L.dim(), std::move(out));
}

bool is_trivial_cone(const ConeUnion& C) {
    for (const auto& P : C.pieces())
        if (!vanishes_on(P, {})) return false;
    return true;
}

}  // namespace mstat::geometry
