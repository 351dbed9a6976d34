#include "mstat/stationarity/program.hpp"

#include "mstat/core/errors.hpp"

#include <algorithm>

namespace mstat::stationarity {

using namespace geometry;
using geometry::to_json;
using mstat::to_string;
using namespace mappings;

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t count) {
    std::vector<std::size_t> r(count);
    for (std::size_t i = 0; i < count; ++i) r[i] = from + i;
    return r;
}

// Selection-style matrix with identity blocks placed at (row_offset, col_offset).
void put_identity(Mat& T, std::size_t row, std::size_t col, std::size_t k, const Rational& v = 1) {
    for (std::size_t i = 0; i < k; ++i) T[row + i][col + i] = v;
}

// (z, λ) ⇒ z − M
PolyMapping base_shift(const PolyUnion& M, std::size_t n, std::size_t extra) {
    Mat C = zero_matrix(n, n + extra);
    put_identity(C, 0, 0, n);
    return shifted_set(C, zeros(n), M, n + extra);
}

// Rows of gph G at (z, ·, 0) as affine functions of λ.
std::vector<Hyperplane> residual_hyperplanes(const ImplicitProgram& p, const Vec& z) {
    std::vector<Hyperplane> hs;
    auto add = [&](const Vec& row, const Rational& rhs) {
        Rational b = rhs;
        for (std::size_t i = 0; i < p.n; ++i) b -= row[i] * z[i];
        hs.push_back({slice(row, p.n, p.m), b});
    };
    for (const auto& P : p.residual_map.graph().pieces()) {
        for (std::size_t i = 0; i < P.A.size(); ++i) add(P.A[i], P.b[i]);
        for (std::size_t i = 0; i < P.E.size(); ++i) add(P.E[i], P.d[i]);
    }
    return hs;
}

std::vector<Hyperplane> strata_hyperplanes(const ImplicitProgram& p, const Vec& z) {
    auto hs = slice_hyperplanes(p.lambda_map, z);
    for (auto& h : residual_hyperplanes(p, z)) hs.push_back(std::move(h));
    return normalize_hyperplanes(hs);
}

}  // namespace

void ImplicitProgram::validate() const {
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw StructuralError("ImplicitProgram: " + what);
    };
    need(lambda_map.n_in() == n && lambda_map.n_out() == m, "F must map R^n to R^m");
    need(residual_map.n_in() == n + m && residual_map.n_out() == s, "G must map R^{n+m} to R^s");
    need(base_set.dim() == n, "M must live in R^n");
    need(objective.dim() == n, "objective dimension must be n");
    if (implicit_aggregate) need(implicit_aggregate->n_in() == n, "implicit aggregate must have input dimension n");
}

DerivedMaps build_derived(const ImplicitProgram& p) {
    p.validate();
    const std::size_t n = p.n, m = p.m, s = p.s;
    DerivedMaps d;

    // z ⇒ {z} x F(z): graph over (z, z', λ).
    Mat lift = zero_matrix(n + m, n + n + m);
    put_identity(lift, 0, 0, n);
    put_identity(lift, n, 2 * n, m);
    std::vector<ConvexPolyhedron> lifted;
    for (const auto& P : p.lambda_map.graph().pieces()) {
        auto Q = affine_preimage(P, lift, zeros(n + m), 2 * n + m);
        for (std::size_t i = 0; i < n; ++i) {
            Vec e = zeros(2 * n + m);
            e[i] = 1;
            e[n + i] = -1;
            Q.add_eq(e, 0);
        }
        lifted.push_back(std::move(Q));
    }
    PolyMapping lifted_F(n, n + m, PolyUnion::from_pieces(2 * n + m, std::move(lifted)));
    d.aggregate = compose(lifted_F, p.residual_map).composed;
    d.aggregate_with_m = product(d.aggregate, base_shift(p.base_set, n, 0));

    // (z, λ) ⇒ F(z) − λ: (z, λ, a) with (z, a + λ) ∈ gph F.
    Mat minus = zero_matrix(n + m, n + m + m);
    put_identity(minus, 0, 0, n);
    put_identity(minus, n, n, m);
    put_identity(minus, n, n + m, m);
    PolyMapping lambda_residual(n + m, m, affine_preimage(p.lambda_map.graph(), minus, zeros(n + m), n + 2 * m));
    d.joint = product(lambda_residual, p.residual_map);
    d.joint_with_m = product(d.joint, base_shift(p.base_set, n, m));

    // ((z,λ), (z,λ,0), z) − gph F x gph G x M
    const std::size_t out = (n + m) + (n + m + s) + n;
    Mat C = zero_matrix(out, n + m);
    put_identity(C, 0, 0, n + m);
    put_identity(C, n + m, 0, n + m);
    put_identity(C, 2 * (n + m) + s, 0, n);
    PolyUnion omega = geometry::product(p.lambda_map.graph(), geometry::product(p.residual_map.graph(), p.base_set));
    d.graph_residual_with_m = shifted_set(C, zeros(out), omega, n + m);

    // (z, w, λ, a, b) ↦ (z, λ, a, b + w) in gph joint.
    const std::size_t hat_dim = n + s + m + m + s;
    Mat hat = zero_matrix(n + m + m + s, hat_dim);
    put_identity(hat, 0, 0, n);
    put_identity(hat, n, n + s, m);
    put_identity(hat, n + m, n + s + m, m);
    put_identity(hat, n + 2 * m, n + s + 2 * m, s);
    put_identity(hat, n + 2 * m, n, s);
    d.joint_shifted = PolyMapping(n + s + m, m + s, affine_preimage(d.joint.graph(), hat, zeros(n + 2 * m + s), hat_dim));

    auto zero_outputs = [](const PolyMapping& map) {
        const std::size_t k = map.n_out();
        return fix_coordinates(map.graph(), range(map.n_in(), k), zeros(k));
    };
    auto k_graph = zero_outputs(d.joint);
    d.intermediate = PolyMapping(n, m, k_graph.is_empty() ? PolyUnion::empty_set(n + m) : k_graph);
    auto khat_graph = zero_outputs(d.joint_shifted);
    d.intermediate_perturbed = PolyMapping(n + s, m, khat_graph.is_empty() ? PolyUnion::empty_set(n + s + m) : khat_graph);

    d.implicit_aggregate = p.implicit_aggregate ? *p.implicit_aggregate : d.aggregate;
    return d;
}

bool is_feasible(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z) {
    if (z.size() != p.n) throw StructuralError("point has dimension " + std::to_string(z.size()) + ", expected " + std::to_string(p.n));
    return p.base_set.contains(z) && !image_at(d.intermediate, z).is_empty();
}

void require_feasible(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z) {
    if (z.size() != p.n) throw StructuralError("point has dimension " + std::to_string(z.size()) + ", expected " + std::to_string(p.n));
    if (!p.base_set.contains(z)) throw PreconditionError("point " + to_string(z) + " is not in M");
    if (image_at(d.intermediate, z).is_empty()) throw PreconditionError("point " + to_string(z) + " is infeasible: K(z) is empty");
}

std::vector<StratumRep> k_stratum_representatives(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z) {
    auto Y = image_at(d.intermediate, z);
    if (Y.is_empty()) throw PreconditionError("point " + to_string(z) + " is not in dom K");
    auto cells = set_strata(Y, strata_hyperplanes(p, z));
    std::vector<StratumRep> out;
    for (std::size_t i = 0; i < cells.size(); ++i) out.push_back({i, cells[i].signs, cells[i].point});
    return out;
}

std::optional<std::size_t> stratum_of(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, const Vec& lambda) {
    if (!d.intermediate.in_graph(z, lambda)) return std::nullopt;
    auto hs = strata_hyperplanes(p, z);
    std::vector<int> signs;
    for (const auto& h : hs) {
        Rational v = dot(h.a, lambda) - h.b;
        signs.push_back(sgn(v));
    }
    auto reps = k_stratum_representatives(p, d, z);
    for (const auto& r : reps)
        if (r.signs == signs) return r.id;
    return std::nullopt;
}

bool is_convex_program(const ImplicitProgram& p) {
    return p.lambda_map.graph().size() == 1 && p.residual_map.graph().size() == 1 && p.base_set.size() == 1 && p.objective.is_convex();
}

json to_json(const ImplicitProgram& p) {
    json j{{"n", p.n}, {"m", p.m}, {"s", p.s}, {"objective", to_json(p.objective)}, {"F", mappings::to_json(p.lambda_map)},
           {"G", mappings::to_json(p.residual_map)}, {"M", geometry::to_json(p.base_set)}};
    if (p.implicit_aggregate) j["implicit_aggregate"] = mappings::to_json(*p.implicit_aggregate);
    return j;
}

ImplicitProgram program_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "program must be an object");
    reject_unknown_keys(j, {"type", "n", "m", "s", "objective", "F", "G", "M", "implicit_aggregate"}, where);
    ImplicitProgram p;
    p.n = dim_from_json(require_key(j, "n", where), where + "/n");
    p.m = dim_from_json(require_key(j, "m", where), where + "/m");
    p.s = dim_from_json(require_key(j, "s", where), where + "/s");
    p.objective = objective_from_json(require_key(j, "objective", where), p.n, where + "/objective");
    p.lambda_map = mapping_from_json(require_key(j, "F", where), where + "/F");
    p.residual_map = mapping_from_json(require_key(j, "G", where), where + "/G");
    p.base_set = union_from_json(require_key(j, "M", where), where + "/M");
    if (j.contains("implicit_aggregate")) p.implicit_aggregate = mapping_from_json(j["implicit_aggregate"], where + "/implicit_aggregate");
    try {
        p.validate();
    } catch (const StructuralError& e) {
        throw ParseError(where, e.what());
    }
    return p;
}

}  // namespace mstat::stationarity
