#include "mstat/stationarity/verdict.hpp"

#include "mstat/core/errors.hpp"
#include "mstat/stationarity/block_system.hpp"

#include <map>

namespace mstat::stationarity {

using namespace geometry;
using geometry::to_json;
using mstat::to_string;
using namespace mappings;

namespace {

PolyMapping base_shift(const PolyUnion& M, std::size_t n) { return shifted_set(identity(n), zeros(n), M, n); }

void require_lambda(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, const std::optional<Vec>& lambda, const char* who) {
    if (!lambda) throw PreconditionError(std::string(who) + ": a multiplier λ ∈ K(z) is required");
    if (lambda->size() != p.m) throw StructuralError(std::string(who) + ": λ must have dimension " + std::to_string(p.m));
    if (!d.intermediate.in_graph(z, *lambda)) throw PreconditionError(std::string(who) + ": λ = " + to_string(*lambda) + " is not in K(z)");
}

struct Cones {
    PolyUnion normal_M;
    ConvexPolyhedron subdiff;
};

Cones base_cones(const ImplicitProgram& p, const Vec& z) { return {limiting_normal_cone(p.base_set, z), subdifferential_at(p.objective, z)}; }

// Zero-coderivatives at the λ-dependent base points.
PolyMapping joint_coderivative(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, const Vec& lambda) {
    return coderivative(d.joint, concat(z, lambda), zeros(p.m + p.s));
}
PolyMapping lambda_coderivative(const ImplicitProgram& p, const Vec& z, const Vec& lambda) { return coderivative(p.lambda_map, z, lambda); }
PolyMapping residual_coderivative(const ImplicitProgram& p, const Vec& z, const Vec& lambda) {
    return coderivative(p.residual_map, concat(z, lambda), zeros(p.s));
}

const char* kSubregular = "polyhedral-subregularity: every polyhedral mapping is metrically subregular";

Verdict trivial_set_verdict(const std::string& kind, const std::vector<ConvexPolyhedron>& systems, const std::vector<std::size_t>& coords,
                            const std::string& anchor) {
    Verdict v;
    v.kind = kind;
    v.holds = true;
    for (const auto& S : systems) {
        auto nz = nonzero_point(S, coords);
        if (nz) {
            v.holds = false;
            v.violation = *nz;
            break;
        }
    }
    v.certificates.push_back(anchor + (v.holds ? ": holds" : ": fails"));
    if (v.holds) v.certificates.push_back("mordukhovich-criterion: metric regularity, hence metric subregularity");
    v.certificates.push_back(kSubregular);
    return v;
}

}  // namespace

std::string to_string(StationarityKind k) {
    switch (k) {
        case StationarityKind::Implicit:
            return "implicit";
        case StationarityKind::Fuzzy:
            return "fuzzy";
        case StationarityKind::Explicit:
            return "explicit";
    }
    return "";
}

std::string to_string(CqKind k) {
    switch (k) {
        case CqKind::MordukhovichI:
            return "mordukhovich_i";
        case CqKind::MordukhovichII:
            return "mordukhovich_ii";
        case CqKind::MordukhovichIII:
            return "mordukhovich_iii";
        case CqKind::AbstractCq:
            return "abstract_cq";
        case CqKind::MrCq:
            return "mr_cq";
        case CqKind::StrongCq:
            return "strong_cq";
        case CqKind::IncLambda:
            return "inc_lambda";
        case CqKind::Sigma:
            return "sigma";
    }
    return "";
}

std::optional<StationarityKind> parse_stationarity_kind(const std::string& s) {
    for (auto k : {StationarityKind::Implicit, StationarityKind::Fuzzy, StationarityKind::Explicit})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

std::optional<CqKind> parse_cq_kind(const std::string& s) {
    for (auto k : {CqKind::MordukhovichI, CqKind::MordukhovichII, CqKind::MordukhovichIII, CqKind::AbstractCq, CqKind::MrCq,
                   CqKind::StrongCq, CqKind::IncLambda, CqKind::Sigma})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

bool cq_needs_lambda(CqKind k) { return k != CqKind::MordukhovichI && k != CqKind::Sigma; }

Verdict check_stationarity(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, StationarityKind kind,
                           const std::optional<Vec>& lambda) {
    require_feasible(p, d, z);
    const std::size_t n = p.n, m = p.m, s = p.s;
    Verdict v;
    v.kind = to_string(kind);
    auto cones = base_cones(p, z);

    if (kind == StationarityKind::Implicit) {
        const auto& H = d.implicit_aggregate;
        auto D = coderivative(H, z, zeros(H.n_out()));
        BlockSystem B;
        auto g = B.add(n), nu = B.add(H.n_out()), xi = B.add(n), zeta = B.add(n);
        for (const auto& Dp : D.graph().pieces())
            for (const auto& Np : cones.normal_M.pieces()) {
                auto sys = B.base();
                B.place(sys, cones.subdiff, {g});
                B.place(sys, Dp, {nu, xi});
                B.place(sys, Np, {zeta});
                B.linear_zero(sys, {{g, 1}, {xi, 1}, {zeta, 1}});
                auto f = lp_feasible(sys);
                if (!f.feasible) continue;
                v.holds = true;
                v.witness = Witness{{}, {}, B.value(*f.witness, nu), B.value(*f.witness, xi), B.value(*f.witness, g), B.value(*f.witness, zeta)};
                break;
            }
        v.certificates.push_back("implicit-m-stationarity: 0 ∈ ∂f(z) + D*H(z,0)(ν) + N_M(z)");
        if (p.implicit_aggregate) v.certificates.push_back("aggregate supplied in reduced form with the same zero set");
        return v;
    }

    require_lambda(p, d, z, lambda, "check_stationarity");
    const Vec& lam = *lambda;
    v.stratum = stratum_of(p, d, z, lam);

    if (kind == StationarityKind::Fuzzy) {
        auto D = joint_coderivative(p, d, z, lam);
        BlockSystem B;
        auto g = B.add(n), mu = B.add(m), nu = B.add(s), xz = B.add(n), xl = B.add(m), zeta = B.add(n);
        for (const auto& Dp : D.graph().pieces()) {
            for (const auto& Np : cones.normal_M.pieces()) {
                auto sys = B.base();
                B.place(sys, cones.subdiff, {g});
                B.place(sys, Dp, {mu, nu, xz, xl});
                B.place(sys, Np, {zeta});
                B.linear_zero(sys, {{g, 1}, {xz, 1}, {zeta, 1}});
                B.fix_zero(sys, xl);
                auto f = lp_feasible(sys);
                if (!f.feasible) continue;
                const Vec& x = *f.witness;
                v.holds = true;
                v.witness = Witness{lam, B.value(x, mu), B.value(x, nu), B.value(x, xz), B.value(x, g), B.value(x, zeta)};
                break;
            }
            if (v.holds) break;
        }
        v.certificates.push_back("fuzzy-m-stationarity: (0,0) ∈ ∂f(z) x {0} + D*joint((z,λ),(0,0))(μ,ν) + N_M(z) x {0}");
        v.certificates.push_back("stratum-constancy: coderivatives are constant on arrangement strata of K(z)");
        return v;
    }

    auto DF = lambda_coderivative(p, z, lam);
    auto DG = residual_coderivative(p, z, lam);
    BlockSystem B;
    auto g = B.add(n), mu = B.add(m), xf = B.add(n), nu = B.add(s), xg = B.add(n), zeta = B.add(n);
    for (const auto& Fp : DF.graph().pieces()) {
        for (const auto& Gp : DG.graph().pieces()) {
            for (const auto& Np : cones.normal_M.pieces()) {
                auto sys = B.base();
                B.place(sys, cones.subdiff, {g});
                B.place(sys, Fp, {mu, xf});
                B.place(sys, Gp, {nu, xg, mu});
                B.place(sys, Np, {zeta});
                B.linear_zero(sys, {{g, 1}, {xf, 1}, {xg, 1}, {zeta, 1}});
                auto f = lp_feasible(sys);
                if (!f.feasible) continue;
                const Vec& x = *f.witness;
                v.holds = true;
                v.witness = Witness{lam, B.value(x, mu), B.value(x, nu), concat(B.value(x, xf), B.value(x, xg)), B.value(x, g), B.value(x, zeta)};
                break;
            }
            if (v.holds) break;
        }
        if (v.holds) break;
    }
    v.certificates.push_back("explicit-m-stationarity: 0 ∈ ∂f(z) + D*F(z,λ)(μ) + {ξ : (ξ,μ) ∈ D*G((z,λ),0)(ν)} + N_M(z)");
    v.certificates.push_back("stratum-constancy: coderivatives are constant on arrangement strata of K(z)");
    return v;
}

StrataVerdict check_stationarity_strata(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, StationarityKind kind) {
    require_feasible(p, d, z);
    StrataVerdict out;
    out.kind = to_string(kind);
    out.strata = k_stratum_representatives(p, d, z);
    out.forall = true;
    for (const auto& r : out.strata) {
        auto v = check_stationarity(p, d, z, kind, r.lambda);
        v.stratum = r.id;
        out.exists = out.exists || v.holds;
        out.forall = out.forall && v.holds;
        out.per_stratum.push_back(std::move(v));
    }
    return out;
}

bool verify_witness(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, StationarityKind kind, const Witness& w) {
    const std::size_t n = p.n;
    if (!is_feasible(p, d, z)) return false;
    if (w.subgradient.size() != n || w.base_normal.size() != n) return false;
    if (!subdifferential_at(p.objective, z).contains(w.subgradient)) return false;
    if (!limiting_normal_cone(p.base_set, z).contains(w.base_normal)) return false;
    const Vec gz = add(w.subgradient, w.base_normal);
    switch (kind) {
        case StationarityKind::Implicit: {
            const auto& H = d.implicit_aggregate;
            if (w.nu.size() != H.n_out() || w.xi.size() != n) return false;
            if (!coderivative_at(H, z, zeros(H.n_out()), w.nu).contains(w.xi)) return false;
            return is_zero(add(gz, w.xi));
        }
        case StationarityKind::Fuzzy: {
            if (w.lambda.size() != p.m || !d.intermediate.in_graph(z, w.lambda)) return false;
            if (w.mu.size() != p.m || w.nu.size() != p.s || w.xi.size() != n) return false;
            auto D = joint_coderivative(p, d, z, w.lambda);
            if (!D.graph().contains(concat(concat(w.mu, w.nu), concat(w.xi, zeros(p.m))))) return false;
            return is_zero(add(gz, w.xi));
        }
        case StationarityKind::Explicit: {
            if (w.lambda.size() != p.m || !d.intermediate.in_graph(z, w.lambda)) return false;
            if (w.mu.size() != p.m || w.nu.size() != p.s || w.xi.size() != 2 * n) return false;
            Vec xf = slice(w.xi, 0, n), xg = slice(w.xi, n, n);
            if (!lambda_coderivative(p, z, w.lambda).graph().contains(concat(w.mu, xf))) return false;
            if (!residual_coderivative(p, z, w.lambda).graph().contains(concat(w.nu, concat(xg, w.mu)))) return false;
            return is_zero(add(gz, add(xf, xg)));
        }
    }
    return false;
}

Verdict check_cq(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, CqKind kind, const std::optional<Vec>& lambda) {
    require_feasible(p, d, z);
    const std::size_t n = p.n, m = p.m, s = p.s;
    const std::string name = to_string(kind);
    auto NM = limiting_normal_cone(p.base_set, z);

    if (kind == CqKind::MordukhovichI) {
        const auto& H = d.aggregate;
        auto D = coderivative(H, z, zeros(H.n_out()));
        BlockSystem B;
        auto nu = B.add(H.n_out()), xi = B.add(n), neg_xi = B.add(n);
        std::vector<ConvexPolyhedron> systems;
        for (const auto& Dp : D.graph().pieces())
            for (const auto& Np : NM.pieces()) {
                auto sys = B.base();
                B.place(sys, Dp, {nu, neg_xi});
                B.place(sys, Np, {xi});
                B.linear_zero(sys, {{xi, 1}, {neg_xi, 1}});
                systems.push_back(std::move(sys));
            }
        auto v = trivial_set_verdict(name, systems, B.coords({nu, xi}), "mordukhovich-criterion for H_M");
        if (v.holds) v.certificates.push_back("H_M metrically regular at (z,(0,0))");
        return v;
    }
    if (kind == CqKind::Sigma) {
        auto r = sigma_subregularity_check(d.aggregate, base_shift(p.base_set, n), z, zeros(s), zeros(n));
        Verdict v;
        v.kind = name;
        v.holds = r.range_condition;
        v.certificates = r.certificates;
        v.certificates.push_back(std::string("intersection-rule for Z = H^{-1}(0) ∩ M: ") + (v.holds ? "certified by the range condition" : "range condition fails"));
        return v;
    }

    require_lambda(p, d, z, lambda, "check_cq");
    const Vec& lam = *lambda;
    Verdict v;

    if (kind == CqKind::MordukhovichII || kind == CqKind::AbstractCq) {
        auto D = joint_coderivative(p, d, z, lam);
        BlockSystem B;
        auto mu = B.add(m), nu = B.add(s), neg_xi = B.add(n), xl = B.add(m), xi = B.add(n);
        std::vector<ConvexPolyhedron> systems;
        for (const auto& Dp : D.graph().pieces()) {
            if (kind == CqKind::AbstractCq) {
                auto sys = B.base();
                B.place(sys, Dp, {mu, nu, neg_xi, xl});
                B.fix_zero(sys, nu);
                B.fix_zero(sys, neg_xi);
                B.fix_zero(sys, xl);
                B.fix_zero(sys, xi);
                systems.push_back(std::move(sys));
                continue;
            }
            for (const auto& Np : NM.pieces()) {
                auto sys = B.base();
                B.place(sys, Dp, {mu, nu, neg_xi, xl});
                B.fix_zero(sys, xl);
                B.place(sys, Np, {xi});
                B.linear_zero(sys, {{xi, 1}, {neg_xi, 1}});
                systems.push_back(std::move(sys));
            }
        }
        if (kind == CqKind::AbstractCq) {
            v = trivial_set_verdict(name, systems, B.coords({mu}), "abstract constraint qualification on the joint map");
        } else {
            v = trivial_set_verdict(name, systems, B.coords({mu, nu, xi}), "mordukhovich-criterion for joint_with_m");
        }
    } else if (kind == CqKind::MordukhovichIII || kind == CqKind::MrCq || kind == CqKind::StrongCq) {
        auto DF = lambda_coderivative(p, z, lam);
        auto DG = residual_coderivative(p, z, lam);
        BlockSystem B;
        auto zeta = B.add(n), mu = B.add(m), nu = B.add(s), xi = B.add(n), t = B.add(n);
        std::vector<ConvexPolyhedron> systems;
        for (const auto& Fp : DF.graph().pieces())
            for (const auto& Gp : DG.graph().pieces()) {
                auto base = B.base();
                B.place(base, Fp, {mu, zeta});
                B.place(base, Gp, {nu, t, mu});
                if (kind == CqKind::MordukhovichIII) {
                    for (const auto& Np : NM.pieces()) {
                        auto sys = base;
                        B.place(sys, Np, {xi});
                        B.linear_zero(sys, {{t, 1}, {zeta, 1}, {xi, 1}});
                        systems.push_back(std::move(sys));
                    }
                } else {
                    B.fix_zero(base, nu);
                    B.fix_zero(base, xi);
                    B.linear_zero(base, {{t, 1}, {zeta, 1}});
                    systems.push_back(std::move(base));
                }
            }
        if (kind == CqKind::MordukhovichIII)
            v = trivial_set_verdict(name, systems, B.coords({zeta, mu, nu, xi}), "mordukhovich-criterion for graph_residual_with_m");
        else if (kind == CqKind::MrCq)
            v = trivial_set_verdict(name, systems, B.coords({mu}), "metric-regularity constraint qualification");
        else
            v = trivial_set_verdict(name, systems, B.coords({zeta, mu}), "strong constraint qualification");
    } else {
        // Inc(λ): D*joint(μ,ν) ⊆ D*F(μ) x {-μ} + D*G(ν).
        auto lhs = joint_coderivative(p, d, z, lam).graph();
        auto DF = lambda_coderivative(p, z, lam).graph();
        auto DG = residual_coderivative(p, z, lam).graph();
        // (μ, ξ1, ν, ξ2, ρ) ↦ (μ, ν, ξ1 + ξ2, -μ + ρ)
        const std::size_t in = m + n + s + n + m, out = m + s + n + m;
        Mat T = zero_matrix(out, in);
        for (std::size_t i = 0; i < m; ++i) T[i][i] = 1;
        for (std::size_t i = 0; i < s; ++i) T[m + i][m + n + i] = 1;
        for (std::size_t i = 0; i < n; ++i) {
            T[m + s + i][m + i] = 1;
            T[m + s + i][m + n + s + i] = 1;
        }
        for (std::size_t i = 0; i < m; ++i) {
            T[m + s + n + i][i] = -1;
            T[m + s + n + i][m + n + s + n + i] = 1;
        }
        auto rhs = affine_image(geometry::product(DF, DG), T, zeros(out), out);
        auto inc = contains_union(lhs, rhs);
        v.kind = name;
        v.holds = inc.holds;
        if (!inc.holds) v.violation = inc.witness;
        v.certificates.push_back(std::string("inc-lambda inclusion: ") + (inc.holds ? "holds" : "fails"));
        if (inc.holds && contains_union(rhs, lhs).holds) v.certificates.push_back("inc-lambda holds with equality");
        v.certificates.push_back("polyhedral-factors: product-rule estimate certified");
    }
    v.stratum = stratum_of(p, d, z, lam);
    return v;
}

Verdict convex_sufficiency(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z) {
    if (!is_convex_program(p))
        throw PreconditionError("convex_sufficiency: program is not certified convex (single-piece gph F, gph G, M and convex objective required)");
    require_feasible(p, d, z);
    Verdict v;
    v.kind = "convex_sufficiency";
    auto imp = check_stationarity(p, d, z, StationarityKind::Implicit);
    if (imp.holds) {
        v.holds = true;
        v.witness = imp.witness;
        v.certificates.push_back("implicit-m-stationarity holds");
    } else {
        for (auto kind : {StationarityKind::Explicit, StationarityKind::Fuzzy}) {
            auto sv = check_stationarity_strata(p, d, z, kind);
            for (const auto& pv : sv.per_stratum)
                if (pv.holds) {
                    v.holds = true;
                    v.witness = pv.witness;
                    v.stratum = pv.stratum;
                    v.certificates.push_back(to_string(kind) + "-m-stationarity holds");
                    break;
                }
            if (v.holds) break;
        }
    }
    v.certificates.push_back("convexity: single-piece graphs, convex M and convex objective");
    v.certificates.push_back(v.holds ? "convex-sufficiency: z is a global minimizer" : "convex-sufficiency: no stationarity system holds, no conclusion");
    return v;
}

Verdict explicit_problem_stationarity(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, const Vec& lambda) {
    require_feasible(p, d, z);
    require_lambda(p, d, z, lambda, "explicit_problem_stationarity");
    const std::size_t n = p.n, m = p.m, s = p.s;
    auto D = coderivative(d.joint_with_m, concat(z, lambda), zeros(m + s + n));
    auto sub = subdifferential_at(p.objective, z);
    BlockSystem B;
    auto g = B.add(n), mu = B.add(m), nu = B.add(s), rho = B.add(n), xz = B.add(n), xl = B.add(m);
    Verdict v;
    v.kind = "explicit_problem";
    for (const auto& Dp : D.graph().pieces()) {
        auto sys = B.base();
        B.place(sys, sub, {g});
        B.place(sys, Dp, {mu, nu, rho, xz, xl});
        B.linear_zero(sys, {{g, 1}, {xz, 1}});
        B.fix_zero(sys, xl);
        auto f = lp_feasible(sys);
        if (!f.feasible) continue;
        const Vec& x = *f.witness;
        v.holds = true;
        v.witness = Witness{lambda, B.value(x, mu), B.value(x, nu), B.value(x, xz), B.value(x, g), B.value(x, rho)};
        break;
    }
    v.stratum = stratum_of(p, d, z, lambda);
    v.certificates.push_back("m-stationarity of the explicit-variable problem: 0 ∈ ∂f(z) x {0} + D*joint_with_m((z,λ),0)(μ,ν,ρ)");
    return v;
}

json to_json(const Verdict& v) {
    json j{{"kind", v.kind}, {"holds", v.holds}, {"certificates", v.certificates}};
    if (v.witness) {
        const auto& w = *v.witness;
        j["witnesses"] = json{{"lambda", to_json(w.lambda)}, {"mu", to_json(w.mu)}, {"nu", to_json(w.nu)}, {"xi", to_json(w.xi)},
                              {"subgradient", to_json(w.subgradient)}, {"base_normal", to_json(w.base_normal)}};
    } else {
        j["witnesses"] = nullptr;
    }
    j["stratum"] = v.stratum ? json(*v.stratum) : json(nullptr);
    if (v.violation) j["violation"] = to_json(*v.violation);
    return j;
}

json to_json(const StrataVerdict& v) {
    json strata = json::array();
    for (std::size_t i = 0; i < v.strata.size(); ++i) {
        json e = to_json(v.per_stratum[i]);
        e["lambda"] = to_json(v.strata[i].lambda);
        strata.push_back(std::move(e));
    }
    return json{{"kind", v.kind}, {"exists", v.exists}, {"forall", v.forall}, {"strata", std::move(strata)}};
}

Verdict verdict_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "verdict must be an object");
    reject_unknown_keys(j, {"kind", "holds", "witnesses", "stratum", "certificates", "violation"}, where);
    Verdict v;
    const auto& kind = require_key(j, "kind", where);
    if (!kind.is_string()) throw ParseError(where + "/kind", "expected a string");
    v.kind = kind.get<std::string>();
    const auto& holds = require_key(j, "holds", where);
    if (!holds.is_boolean()) throw ParseError(where + "/holds", "expected a boolean");
    v.holds = holds.get<bool>();
    if (j.contains("witnesses") && !j["witnesses"].is_null()) {
        const auto& w = j["witnesses"];
        const std::string ww = where + "/witnesses";
        reject_unknown_keys(w, {"lambda", "mu", "nu", "xi", "subgradient", "base_normal"}, ww);
        Witness x;
        x.lambda = vector_from_json(require_key(w, "lambda", ww), ww + "/lambda");
        x.mu = vector_from_json(require_key(w, "mu", ww), ww + "/mu");
        x.nu = vector_from_json(require_key(w, "nu", ww), ww + "/nu");
        x.xi = vector_from_json(require_key(w, "xi", ww), ww + "/xi");
        x.subgradient = vector_from_json(require_key(w, "subgradient", ww), ww + "/subgradient");
        x.base_normal = vector_from_json(require_key(w, "base_normal", ww), ww + "/base_normal");
        v.witness = std::move(x);
    }
    if (j.contains("stratum") && !j["stratum"].is_null()) v.stratum = dim_from_json(j["stratum"], where + "/stratum");
    if (j.contains("certificates")) {
        if (!j["certificates"].is_array()) throw ParseError(where + "/certificates", "expected an array");
        for (const auto& c : j["certificates"]) {
            if (!c.is_string()) throw ParseError(where + "/certificates", "expected strings");
            v.certificates.push_back(c.get<std::string>());
        }
    }
    if (j.contains("violation")) v.violation = vector_from_json(j["violation"], where + "/violation");
    return v;
}

}  // namespace mstat::stationarity
