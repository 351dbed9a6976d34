#include "mstat/stationarity/pipeline.hpp"

namespace mstat::stationarity {

using namespace geometry;
using geometry::to_json;
using mstat::to_string;

namespace {

const char* status_of(bool b) { return b ? "holds" : "fails"; }

// (z,w) ⇒ {(z,λ) : λ ∈ F(z), w ∈ G(z,λ)}
PolyMapping aux_map(const ImplicitProgram& p, const DerivedMaps& d) {
    const std::size_t n = p.n, s = p.s, m = p.m;
    const std::size_t in = n + s + m, out = n + s + n + m;
    Mat T = zero_matrix(out, in);
    for (std::size_t i = 0; i < n + s; ++i) T[i][i] = 1;
    for (std::size_t i = 0; i < n; ++i) T[n + s + i][i] = 1;
    for (std::size_t i = 0; i < m; ++i) T[n + s + n + i][n + s + i] = 1;
    return PolyMapping(n + s, n + m, affine_image(d.intermediate_perturbed.graph(), T, zeros(out), out));
}

StrataVerdict per_stratum_cq(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, const std::vector<StratumRep>& reps, CqKind kind) {
    StrataVerdict out;
    out.kind = to_string(kind);
    out.strata = reps;
    out.forall = true;
    for (const auto& r : reps) {
        auto v = check_cq(p, d, z, kind, r.lambda);
        out.exists = out.exists || v.holds;
        out.forall = out.forall && v.holds;
        out.per_stratum.push_back(std::move(v));
    }
    return out;
}

class Graph {
public:
    explicit Graph(PipelineReport& r) : r_(r) {}

    void node(const std::string& id, const std::string& status, const std::string& anchor, json detail = nullptr) {
        r_.nodes.push_back({id, status, anchor, std::move(detail)});
        status_[id] = status;
    }
    const std::string& status(const std::string& id) const { return status_.at(id); }

    /// Records the implication and returns its edge status.
    std::string edge(std::vector<std::string> from, const std::string& to, const std::string& anchor) {
        std::string st = "applies";
        for (const auto& f : from) {
            const auto& s = status(f);
            if (s == "fails" || s == "vacuous") {
                st = "premise fails";
                break;
            }
            if (s == "uncertified") st = "hypothesis uncertified";
        }
        r_.edges.push_back({std::move(from), to, anchor, st});
        return st;
    }

private:
    PipelineReport& r_;
    std::map<std::string, std::string> status_;
};

}  // namespace

PipelineReport run_pipeline(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z) {
    require_feasible(p, d, z);
    PipelineReport r;
    r.point = z;
    Graph g(r);
    const Vec zw = concat(z, zeros(p.s));

    r.khat_locally_bounded = mappings::locally_bounded_at(d.intermediate_perturbed, zw);
    const bool aux_bounded = mappings::locally_bounded_at(aux_map(p, d), zw);
    g.node("khat_inner_semicompact", r.khat_locally_bounded ? "holds" : "uncertified", "local-boundedness ⟹ inner semicompactness");
    g.node("aux_inner_semicompact", aux_bounded ? "holds" : "uncertified", "local-boundedness ⟹ inner semicompactness");

    const auto reps = k_stratum_representatives(p, d, z);
    json strata = json::array();
    for (const auto& rep : reps) strata.push_back(json{{"id", rep.id}, {"lambda", to_json(rep.lambda)}});

    r.implicit = check_stationarity(p, d, z, StationarityKind::Implicit);
    r.fuzzy = check_stationarity_strata(p, d, z, StationarityKind::Fuzzy);
    r.explicit_ = check_stationarity_strata(p, d, z, StationarityKind::Explicit);
    g.node("implicit", status_of(r.implicit.holds), "implicit-m-stationarity", to_json(r.implicit));
    g.node("fuzzy_some", status_of(r.fuzzy.exists), "fuzzy-m-stationarity", to_json(r.fuzzy));
    g.node("fuzzy_all", status_of(r.fuzzy.forall), "fuzzy-m-stationarity");
    g.node("explicit_some", status_of(r.explicit_.exists), "explicit-m-stationarity", to_json(r.explicit_));
    g.node("explicit_all", status_of(r.explicit_.forall), "explicit-m-stationarity");

    for (auto kind : {CqKind::MordukhovichI, CqKind::Sigma}) {
        auto v = check_cq(p, d, z, kind);
        g.node(to_string(kind), status_of(v.holds), v.certificates.empty() ? "" : v.certificates.front(), to_json(v));
        r.cq.emplace(to_string(kind), std::move(v));
    }
    for (auto kind : {CqKind::MordukhovichII, CqKind::MordukhovichIII, CqKind::AbstractCq, CqKind::MrCq, CqKind::StrongCq, CqKind::IncLambda}) {
        auto sv = per_stratum_cq(p, d, z, reps, kind);
        g.node(to_string(kind) + "_all", status_of(sv.forall), to_string(kind), to_json(sv));
        g.node(to_string(kind) + "_some", status_of(sv.exists), to_string(kind));
        r.cq_strata.emplace(to_string(kind), std::move(sv));
    }
    // Every mapping below is polyhedral, hence metrically subregular at each graph point.
    const std::string poly = "polyhedral-subregularity";
    g.node("h_m_subregular", "holds", poly, json{{"informative", r.cq.at("mordukhovich_i").holds}});
    g.node("joint_with_m_subregular", "holds", poly, json{{"informative_all", r.cq_strata.at("mordukhovich_ii").forall}});
    g.node("graph_residual_with_m_subregular", "holds", poly, json{{"informative_all", r.cq_strata.at("mordukhovich_iii").forall}});
    g.node("joint_shifted_subregular", "holds", poly, json{{"informative_all", r.cq_strata.at("abstract_cq").forall}});
    g.node("feasibility_map_subregular", "holds", poly);

    // Branches: each certifies "local minimizer ⟹ explicit for some λ".
    struct Branch {
        char id;
        std::vector<std::string> premises;
    };
    const std::vector<Branch> branches{
        {'a', {"h_m_subregular", "khat_inner_semicompact", "joint_shifted_subregular", "inc_lambda_all"}},
        {'b', {"h_m_subregular", "aux_inner_semicompact", "feasibility_map_subregular"}},
        {'c', {"joint_with_m_subregular", "inc_lambda_some"}},
        {'d', {"graph_residual_with_m_subregular"}},
    };
    bool any_branch = false;
    for (const auto& b : branches) {
        std::string id = std::string("branch_") + b.id;
        std::string st = "holds";
        for (const auto& pr : b.premises) {
            const auto& s = g.status(pr);
            if (s == "fails") {
                st = "fails";
                break;
            }
            if (s == "uncertified") st = "uncertified";
        }
        g.node(id, st, "explicit-m-stationarity qualification");
        g.edge(b.premises, id, "premises");
        r.branches[b.id] = st;
        any_branch = any_branch || st == "holds";
    }

    // Local-minimizer necessity, contraposed: a certified qualification plus a failing system excludes minimality.
    g.node("local_min_implies_implicit", "holds", "implicit-m-stationarity is necessary under subregularity of H_M");
    g.edge({"h_m_subregular"}, "local_min_implies_implicit", "stationarity-via-subregularity");
    g.node("local_min_implies_explicit_some", any_branch ? "holds" : "uncertified", "explicit-m-stationarity qualification");
    for (const auto& b : branches) g.edge({std::string("branch_") + b.id}, "local_min_implies_explicit_some", "branch");
    if (!r.implicit.holds) r.conclusions.push_back("z is not a local minimizer: implicit system fails while H_M is subregular");
    if (any_branch && !r.explicit_.exists) r.conclusions.push_back("z is not a local minimizer: explicit system fails for every λ under a certified branch");

    // Implications between the systems at this point.
    auto implied = [&](std::vector<std::string> from, const std::string& to, const std::string& anchor) {
        auto st = g.edge(std::move(from), to, anchor);
        if (st == "applies" && g.status(to) != "holds")
            r.inconsistencies.push_back(anchor + ": premises hold but " + to + " fails");
    };
    implied({"implicit", "khat_inner_semicompact", "joint_shifted_subregular"}, "fuzzy_some", "implicit-to-fuzzy");
    implied({"implicit", "khat_inner_semicompact", "joint_shifted_subregular", "inc_lambda_all"}, "explicit_some", "implicit-to-explicit via inc-lambda");
    implied({"implicit", "aux_inner_semicompact", "feasibility_map_subregular"}, "explicit_some", "implicit-to-explicit via chain-rule");
    implied({"implicit", "khat_inner_semicompact", "abstract_cq_all"}, "fuzzy_some", "implicit-to-fuzzy via abstract-cq");
    implied({"implicit", "khat_inner_semicompact", "inc_lambda_all", "mr_cq_all"}, "explicit_some", "implicit-to-explicit via mr-cq");
    implied({"implicit", "khat_inner_semicompact", "strong_cq_all"}, "explicit_some", "implicit-to-explicit via strong-cq");

    // Per-stratum monotonicity: Inc(λ) and fuzzy at λ give explicit at λ.
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (r.cq_strata.at("inc_lambda").per_stratum[i].holds && r.fuzzy.per_stratum[i].holds && !r.explicit_.per_stratum[i].holds)
            r.inconsistencies.push_back("inc-lambda: fuzzy holds but explicit fails at stratum " + std::to_string(reps[i].id));
    }
    g.node("fuzzy_equals_explicit_per_stratum", r.cq_strata.at("inc_lambda").forall ? "holds" : "uncertified", "inc-lambda");
    g.edge({"inc_lambda_all"}, "fuzzy_equals_explicit_per_stratum", "inc-lambda");

    if (is_convex_program(p)) {
        auto v = convex_sufficiency(p, d, z);
        g.node("global_minimizer", v.holds ? "holds" : "vacuous", "convex-sufficiency", to_json(v));
        if (v.holds) r.conclusions.push_back("z is a global minimizer (convex program, stationarity holds)");
    }
    r.nodes.insert(r.nodes.begin(), PipelineNode{"strata", "holds", "stratum-constancy", strata});
    return r;
}

json to_json(const PipelineReport& r) {
    json nodes = json::array(), edges = json::array(), branches = json::object();
    for (const auto& n : r.nodes) nodes.push_back(json{{"id", n.id}, {"status", n.status}, {"anchor", n.anchor}, {"detail", n.detail}});
    for (const auto& e : r.edges) edges.push_back(json{{"from", e.from}, {"to", e.to}, {"anchor", e.anchor}, {"status", e.status}});
    for (const auto& [k, v] : r.branches) branches[std::string(1, k)] = v;
    json status = json::object();
    for (const auto& n : r.nodes) status[n.id] = n.status;
    return json{{"point", to_json(r.point)},   {"nodes", nodes},
                {"edges", edges},              {"status", status},
                {"branches", branches},        {"conclusions", r.conclusions},
                {"consistent", r.consistent()}, {"inconsistencies", r.inconsistencies}};
}

}  // namespace mstat::stationarity
