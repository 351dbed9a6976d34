#include "mstat/mappings/mapping.hpp"

#include "mstat/core/errors.hpp"

#include <map>
#include <numeric>

namespace mstat::mappings {

using namespace geometry;

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t count) {
    std::vector<std::size_t> r(count);
    std::iota(r.begin(), r.end(), from);
    return r;
}

Mat negated_identity(std::size_t n) {
    Mat m = identity(n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = -1;
    return m;
}

bool pairwise_trivial(const PolyUnion& A, const PolyUnion& B) {
    for (const auto& a : A.pieces())
        for (const auto& b : B.pieces()) {
            auto nb = affine_preimage(b, negated_identity(b.dim), zeros(b.dim), b.dim);
            if (!vanishes_on(intersect(a, nb), {})) return false;
        }
    return true;
}

}  // namespace

PolyMapping::PolyMapping(std::size_t n_in, std::size_t n_out, PolyUnion graph)
    : n_in_(n_in), n_out_(n_out), graph_(std::move(graph)) {
    if (graph_.dim() != n_in + n_out)
        throw StructuralError("PolyMapping: graph dimension " + std::to_string(graph_.dim()) + " != " +
                              std::to_string(n_in) + " + " + std::to_string(n_out));
    require_dim(graph_.dim(), "PolyMapping");
}

bool PolyMapping::in_graph(const Vec& z, const Vec& w) const {
    if (z.size() != n_in_ || w.size() != n_out_) throw StructuralError("in_graph: point dimension mismatch");
    return graph_.contains(concat(z, w));
}

PolyUnion image_at(const PolyMapping& map, const Vec& z) {
    if (z.size() != map.n_in()) throw StructuralError("image_at: input dimension mismatch");
    if (map.graph().is_empty()) return PolyUnion::empty_set(map.n_out());
    return fix_coordinates(map.graph(), range(0, map.n_in()), z);
}

PolyUnion domain(const PolyMapping& map) {
    if (map.graph().is_empty()) return PolyUnion::empty_set(map.n_in());
    return project_out(map.graph(), range(map.n_in(), map.n_out()));
}

PolyMapping inverse(const PolyMapping& map) {
    const std::size_t n = map.n_in(), m = map.n_out();
    Mat T = zero_matrix(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i) T[i][m + i] = 1;
    for (std::size_t j = 0; j < m; ++j) T[n + j][j] = 1;
    if (map.graph().is_empty()) return PolyMapping(m, n, PolyUnion::empty_set(n + m));
    return PolyMapping(m, n, affine_preimage(map.graph(), T, zeros(n + m), n + m));
}

PolyMapping coderivative(const PolyMapping& map, const Vec& z, const Vec& w) {
    if (!map.in_graph(z, w)) throw PreconditionError("coderivative: (" + to_string(z) + ", " + to_string(w) + ") is not in the graph");
    const std::size_t n = map.n_in(), m = map.n_out();
    ConeUnion N = limiting_normal_cone(map.graph(), concat(z, w));
    // (η, ξ) ↦ (ξ, −η)
    Mat T = zero_matrix(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i) T[i][m + i] = 1;
    for (std::size_t j = 0; j < m; ++j) T[n + j][j] = -1;
    return PolyMapping(m, n, affine_preimage(N, T, zeros(n + m), n + m));
}

PolyUnion coderivative_at(const PolyMapping& map, const Vec& z, const Vec& w, const Vec& eta) {
    if (eta.size() != map.n_out()) throw StructuralError("coderivative_at: direction dimension mismatch");
    return image_at(coderivative(map, z, w), eta);
}

bool criterion_check(const PolyMapping& coderiv, Criterion kind) {
    if (kind == Criterion::Aubin) {
        auto slice = image_at(coderiv, zeros(coderiv.n_in()));
        for (const auto& P : slice.pieces())
            if (!vanishes_on(P, {})) return false;
        return true;
    }
    auto ker = image_at(inverse(coderiv), zeros(coderiv.n_out()));
    for (const auto& P : ker.pieces())
        if (!vanishes_on(P, {})) return false;
    return true;
}

bool criterion_check(const PolyMapping& map, const Vec& z, const Vec& w, Criterion kind) {
    return criterion_check(coderivative(map, z, w), kind);
}

bool locally_bounded_at(const PolyMapping& map, const Vec& z) {
    if (image_at(map, z).is_empty()) throw PreconditionError("locally_bounded_at: " + to_string(z) + " is not in the domain");
    for (const auto& P : map.graph().pieces()) {
        auto slice = fix_coordinates(P, range(0, map.n_in()), z);
        if (is_empty(slice)) continue;
        if (!vanishes_on(recession_cone(slice), {})) return false;
    }
    return true;
}

Composition compose(const PolyMapping& s1, const PolyMapping& s2) {
    if (s1.n_out() != s2.n_in()) throw StructuralError("compose: S1 output dimension differs from S2 input dimension");
    const std::size_t n = s1.n_in(), k = s1.n_out(), m = s2.n_out();
    const std::size_t dim = n + k + m;
    require_dim(dim, "compose");
    require_pieces(s1.graph().size() * s2.graph().size(), "compose");
    std::vector<ConvexPolyhedron> lifted;
    for (const auto& P : s1.graph().pieces())
        for (const auto& Q : s2.graph().pieces()) lifted.push_back(intersect(embed(P, dim, range(0, n + k)), embed(Q, dim, range(n, k + m))));
    PolyUnion L = PolyUnion::from_pieces(dim, std::move(lifted));
    Composition c;
    if (L.is_empty()) {
        c.composed = PolyMapping(n, m, PolyUnion::empty_set(n + m));
        c.intermediate = PolyMapping(n + m, k, PolyUnion::empty_set(dim));
        return c;
    }
    c.composed = PolyMapping(n, m, prune(project_out(L, range(n, k))));
    // (z, w, y) ordering for the intermediate map.
    std::vector<std::size_t> perm;
    for (std::size_t i = 0; i < n; ++i) perm.push_back(i);
    for (std::size_t i = 0; i < m; ++i) perm.push_back(n + k + i);
    for (std::size_t i = 0; i < k; ++i) perm.push_back(n + i);
    c.intermediate = PolyMapping(n + m, k, affine_preimage(L, [&] {
                                     // x_lifted = T x_perm
                                     Mat T = zero_matrix(dim, dim);
                                     for (std::size_t r = 0; r < dim; ++r) T[perm[r]][r] = 1;
                                     return T;
                                 }(),
                                                           zeros(dim), dim));
    return c;
}

ChainRuleReport chain_rule_check(const PolyMapping& s1, const PolyMapping& s2, const Vec& z, const Vec& w) {
    ChainRuleReport r;
    auto comp = compose(s1, s2);
    const Vec zw = concat(z, w);
    if (!comp.composed.in_graph(z, w)) throw PreconditionError("chain_rule_check: (z,w) is not in the graph of the composition");
    r.intermediate_locally_bounded = locally_bounded_at(comp.intermediate, zw);
    auto hs = slice_hyperplanes(s1, z);
    for (auto& h : slice_hyperplanes(inverse(s2), w)) hs.push_back(std::move(h));
    auto cells = set_strata(image_at(comp.intermediate, zw), hs);
    r.intermediate_strata = cells.size();
    const std::size_t dim = s2.n_out() + s1.n_in();
    std::vector<ConvexPolyhedron> bound;
    for (const auto& c : cells) {
        auto outer = coderivative(s2, c.point, w);
        auto inner = coderivative(s1, z, c.point);
        auto chained = compose(outer, inner).composed;
        for (const auto& P : chained.graph().pieces()) bound.push_back(P);
    }
    auto lhs = coderivative(comp.composed, z, w).graph();
    auto rhs = PolyUnion::from_pieces(dim, std::move(bound));
    auto inc = rhs.is_empty() ? Containment{lhs.is_empty(), std::nullopt} : contains_union(lhs, rhs);
    if (rhs.is_empty() && !lhs.is_empty()) inc.witness = lp_feasible(lhs.pieces().front()).witness;
    r.inclusion = inc.holds;
    r.counterexample = inc.witness;
    r.certificates.push_back("polyhedral-subregularity: the feasibility map of the composition is polyhedral");
    if (r.intermediate_locally_bounded)
        r.certificates.push_back("local-boundedness: intermediate map inner semicompact");
    else
        r.certificates.push_back("inner semicompactness of the intermediate map: uncertified");
    if (r.inclusion) r.certificates.push_back("chain-rule inclusion verified exactly");
    return r;
}

PolyMapping product(const PolyMapping& g1, const PolyMapping& g2) {
    if (g1.n_in() != g2.n_in()) throw StructuralError("product: input dimensions differ");
    const std::size_t n = g1.n_in(), a = g1.n_out(), b = g2.n_out();
    const std::size_t dim = n + a + b;
    require_dim(dim, "product");
    require_pieces(g1.graph().size() * g2.graph().size(), "product");
    std::vector<std::size_t> w2 = range(0, n);
    for (std::size_t i = 0; i < b; ++i) w2.push_back(n + a + i);
    std::vector<ConvexPolyhedron> pieces;
    for (const auto& P : g1.graph().pieces())
        for (const auto& Q : g2.graph().pieces()) pieces.push_back(intersect(embed(P, dim, range(0, n + a)), embed(Q, dim, w2)));
    return PolyMapping(n, a + b, PolyUnion::from_pieces(dim, std::move(pieces)));
}

PolyUnion coderivative_range(const PolyMapping& coderiv) { return project_out(coderiv.graph(), range(0, coderiv.n_in())); }

ProductReport product_report(const PolyMapping& g1, const PolyMapping& g2, const Vec& z, const Vec& w1, const Vec& w2) {
    ProductReport r;
    auto D1 = coderivative(g1, z, w1);
    auto D2 = coderivative(g2, z, w2);
    r.qualification = pairwise_trivial(image_at(D1, zeros(g1.n_out())), image_at(D2, zeros(g2.n_out())));
    auto Dp = coderivative(product(g1, g2), z, concat(w1, w2));
    const std::size_t n = g1.n_in(), a = g1.n_out(), b = g2.n_out();
    // (η1, x1, η2, x2) ↦ (η1, η2, x1 + x2)
    Mat T = zero_matrix(a + b + n, a + n + b + n);
    for (std::size_t i = 0; i < a; ++i) T[i][i] = 1;
    for (std::size_t i = 0; i < b; ++i) T[a + i][a + n + i] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        T[a + b + i][a + i] = 1;
        T[a + b + i][a + n + b + i] = 1;
    }
    auto rhs = affine_image(geometry::product(D1.graph(), D2.graph()), T, zeros(a + b + n), a + b + n);
    r.estimate_inclusion = contains_union(Dp.graph(), rhs).holds;
    r.certificates.push_back("polyhedral-factors: product-rule estimate applies");
    if (r.qualification) r.certificates.push_back("coderivative-qualification: D*Γ1(0) ∩ (−D*Γ2(0)) = {0}");
    if (r.estimate_inclusion) r.certificates.push_back("product-rule inclusion verified exactly");
    return r;
}

SigmaReport sigma_subregularity_check(const PolyMapping& g1, const PolyMapping& g2, const Vec& z, const Vec& w1,
                                      const Vec& w2) {
    SigmaReport r;
    auto R1 = coderivative_range(coderivative(g1, z, w1));
    auto R2 = coderivative_range(coderivative(g2, z, w2));
    r.range_condition = pairwise_trivial(R1, R2);
    r.certificates.push_back("polyhedral-subregularity: both factors are polyhedral");
    if (r.range_condition) r.certificates.push_back("range-intersection condition: product subregular");
    r.product_subregular = true;
    r.certificates.push_back("polyhedral-subregularity: the product mapping is polyhedral");
    return r;
}

PolyMapping affine_map(const Mat& C, const Vec& c, std::size_t n_in) {
    const std::size_t m = c.size();
    ConvexPolyhedron P(n_in + m);
    for (std::size_t i = 0; i < m; ++i) {
        Vec row = zeros(n_in + m);
        for (std::size_t j = 0; j < n_in; ++j) row[j] = -C[i][j];
        row[n_in + i] = 1;
        P.add_eq(std::move(row), c[i]);
    }
    return PolyMapping(n_in, m, PolyUnion(std::move(P)));
}

PolyMapping shifted_set(const Mat& C, const Vec& c, const PolyUnion& omega, std::size_t n_in) {
    const std::size_t m = c.size();
    if (omega.dim() != m) throw StructuralError("shifted_set: set dimension mismatch");
    // w in C z + c − Ω  ⟺  C z + c − w in Ω
    Mat T = zero_matrix(m, n_in + m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n_in; ++j) T[i][j] = C[i][j];
        T[i][n_in + i] = -1;
    }
    return PolyMapping(n_in, m, affine_preimage(omega, T, c, n_in + m));
}

PolyMapping constant_map(std::size_t n_in, const PolyUnion& S) {
    std::vector<ConvexPolyhedron> pieces;
    for (const auto& P : S.pieces()) pieces.push_back(embed(P, n_in + S.dim(), range(n_in, S.dim())));
    return PolyMapping(n_in, S.dim(), PolyUnion(n_in + S.dim(), std::move(pieces)));
}

std::vector<Hyperplane> slice_hyperplanes(const PolyMapping& map, const Vec& z) {
    std::vector<Hyperplane> hs;
    const std::size_t n = map.n_in();
    auto add = [&](const Vec& row, const Rational& rhs) {
        Rational b = rhs;
        for (std::size_t i = 0; i < n; ++i) b -= row[i] * z[i];
        hs.push_back({slice(row, n, map.n_out()), b});
    };
    for (const auto& P : map.graph().pieces()) {
        for (std::size_t i = 0; i < P.A.size(); ++i) add(P.A[i], P.b[i]);
        for (std::size_t i = 0; i < P.E.size(); ++i) add(P.E[i], P.d[i]);
    }
    return normalize_hyperplanes(hs);
}

std::vector<Cell> set_strata(const PolyUnion& Y, const std::vector<Hyperplane>& hs) {
    auto nh = normalize_hyperplanes(hs);
    std::map<std::vector<int>, Vec> cells;
    for (const auto& P : Y.pieces())
        for (auto& c : arrangement_cells(P, nh, true)) cells.emplace(std::move(c.signs), std::move(c.point));
    std::vector<Cell> out;
    for (auto& [s, p] : cells) out.push_back({s, p});
    return out;
}

json to_json(const PolyMapping& map) {
    return json{{"n_in", map.n_in()}, {"n_out", map.n_out()}, {"graph", geometry::to_json(map.graph())}};
}

PolyMapping mapping_from_json(const json& j, const std::string& where) {
    reject_unknown_keys(j, {"n_in", "n_out", "graph"}, where);
    auto n_in = dim_from_json(require_key(j, "n_in", where), where + "/n_in");
    auto n_out = dim_from_json(require_key(j, "n_out", where), where + "/n_out");
    auto graph = union_from_json(require_key(j, "graph", where), where + "/graph");
    if (graph.dim() != n_in + n_out) throw ParseError(where + "/graph/dim", "graph dimension must equal n_in + n_out");
    return PolyMapping(n_in, n_out, std::move(graph));
}

}  // namespace mstat::mappings
