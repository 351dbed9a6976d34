#include "mstat/core/errors.hpp"
#include "mstat/geometry/cones.hpp"
#include "mstat/problems/bilevel.hpp"
#include "mstat/problems/instance.hpp"
#include "mstat/problems/oracle.hpp"
#include "mstat/stationarity/pipeline.hpp"
#include "mstat/stationarity/sampling.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace mstat;
using namespace mstat::geometry;
using namespace mstat::stationarity;
using mstat::to_string;
namespace pr = mstat::problems;

namespace {

enum Exit { kCompleted = 0, kParse = 1, kPrecondition = 2, kResource = 3 };

struct Options {
    std::string problem;
    std::string point;
    std::string lambda;
    std::string image;
    std::string eta;
    std::string kind;
    std::string map = "H";
    std::string grid_step = "1/100";
    std::vector<std::string> box;
    std::size_t radius = 2;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    bool json = false;
};

// ---- text rendering -------------------------------------------------------

std::string linear_form(const Vec& a) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Rational c = a[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Rational mag = abs(c);
        if (mag != 1) os << to_string(mag) << "*";
        os << "x" << (i + 1);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

void print_piece(std::ostream& os, const ConvexPolyhedron& P, const std::string& indent) {
    std::size_t printed = 0;
    for (std::size_t i = 0; i < P.E.size(); ++i)
        if (!is_zero(P.E[i])) {
            os << indent << linear_form(P.E[i]) << " = " << to_string(P.d[i]) << "\n";
            ++printed;
        }
    for (std::size_t i = 0; i < P.A.size(); ++i)
        if (!is_zero(P.A[i])) {
            os << indent << linear_form(P.A[i]) << " <= " << to_string(P.b[i]) << "\n";
            ++printed;
        }
    if (printed == 0) os << indent << "R^" << P.dim << "\n";
}

void print_union(std::ostream& os, const std::string& title, const PolyUnion& U) {
    os << title << " (dim " << U.dim() << ", " << U.size() << " piece" << (U.size() == 1 ? "" : "s") << ")\n";
    if (U.is_empty()) {
        os << "  empty\n";
        return;
    }
    for (std::size_t k = 0; k < U.size(); ++k) {
        os << "  piece " << (k + 1) << ":\n";
        print_piece(os, U.pieces()[k], "    ");
    }
}

void print_verdict(std::ostream& os, const Verdict& v, const std::string& indent = "") {
    os << indent << v.kind << ": " << (v.holds ? "holds" : "fails");
    if (v.stratum) os << "  (stratum " << *v.stratum << ")";
    os << "\n";
    if (v.witness) {
        const auto& w = *v.witness;
        auto line = [&](const char* name, const Vec& x) {
            if (!x.empty()) os << indent << "  " << name << " = " << to_string(x) << "\n";
        };
        line("lambda", w.lambda);
        line("mu", w.mu);
        line("nu", w.nu);
        line("xi", w.xi);
        line("subgradient", w.subgradient);
        line("base normal", w.base_normal);
    }
    if (v.violation) os << indent << "  violation = " << to_string(*v.violation) << "\n";
    for (const auto& c : v.certificates) os << indent << "  [" << c << "]\n";
}

void print_strata(std::ostream& os, const StrataVerdict& v) {
    os << v.kind << " over " << v.strata.size() << " strata: exists=" << (v.exists ? "yes" : "no") << " forall=" << (v.forall ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < v.per_stratum.size(); ++i) {
        os << "  stratum " << v.strata[i].id << " at lambda = " << to_string(v.strata[i].lambda) << "\n";
        print_verdict(os, v.per_stratum[i], "    ");
    }
}

void emit(const json& j, bool as_json, const std::function<void(std::ostream&)>& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        text(std::cout);
}

// ---- argument handling ----------------------------------------------------

Vec parse_point(const std::string& s, std::size_t dim, const char* what) {
    if (s.empty()) throw ParseError(what, "missing value");
    Vec v = parse_vector(s);
    if (v.size() != dim) throw ParseError(what, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(v.size()));
    return v;
}

std::optional<Vec> optional_point(const std::string& s, std::size_t dim, const char* what) {
    if (s.empty()) return std::nullopt;
    return parse_point(s, dim, what);
}

std::pair<Rational, Rational> parse_range(const std::string& s) {
    auto pos = s.find("..");
    if (pos == std::string::npos) throw ParseError("--box", "expected lo..hi, got '" + s + "'");
    return {parse_rational(s.substr(0, pos)), parse_rational(s.substr(pos + 2))};
}

pr::GridConfig grid_config(const Options& o, std::size_t dims) {
    pr::GridConfig c;
    c.step = parse_rational(o.grid_step);
    c.radius = o.radius;
    std::vector<std::pair<Rational, Rational>> ranges;
    for (const auto& item : o.box) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ',')) ranges.push_back(parse_range(part));
    }
    if (ranges.empty()) ranges.push_back({Rational(-3), Rational(3)});
    if (ranges.size() == 1) ranges.assign(dims, ranges.front());
    if (ranges.size() != dims) throw ParseError("--box", "expected 1 or " + std::to_string(dims) + " ranges");
    c.box = ranges;
    return c;
}

const ImplicitProgram& require_program(const pr::Problem& p) {
    if (p.oracle_only) throw PreconditionError(p.type + " is known only through membership oracles; use the relate command");
    if (!p.program) throw PreconditionError("problem type '" + p.type + "' does not define a program");
    return *p.program;
}

PolyMapping select_map(const pr::Problem& pb, const DerivedMaps& d, const std::string& name) {
    const auto& p = *pb.program;
    if (name == "F") return p.lambda_map;
    if (name == "G") return p.residual_map;
    if (name == "H") return d.aggregate;
    if (name == "HM") return d.aggregate_with_m;
    if (name == "K") return d.intermediate;
    if (name == "Khat") return d.intermediate_perturbed;
    if (name == "joint") return d.joint;
    if (name == "jointM") return d.joint_with_m;
    throw ParseError("--map", "unknown mapping '" + name + "' (F, G, H, HM, K, Khat, joint, jointM)");
}

// ---- commands -------------------------------------------------------------

int cmd_check(const Options& o) {
    auto pb = pr::load_problem(o.problem);
    if (pb.bilevel && (o.kind == "fully_explicit" || o.kind == "bilevel_multipliers")) {
        const auto& in = *pb.bilevel;
        Vec xy = parse_point(o.point, in.n1 + in.n2, "--point");
        Vec x = slice(xy, 0, in.n1), y = slice(xy, in.n1, in.n2);
        Vec l = parse_point(o.lambda, in.m, "--lambda");
        if (o.kind == "fully_explicit") {
            auto v = pr::fully_explicit_stationarity(in, x, y, l);
            emit(to_json(v), o.json, [&](std::ostream& os) { print_verdict(os, v); });
        } else {
            auto r = pr::bilevel_multiplier_conditions(in, x, y, l);
            emit(pr::to_json(r), o.json, [&](std::ostream& os) {
                os << "strict MF: " << (r.strict_mf ? "holds" : "fails") << "\nLICQ: " << (r.licq ? "holds" : "fails")
                   << "\nmultiplier set is a singleton: " << (r.multiplier_singleton ? "yes" : "no") << "\n";
                for (const auto& c : r.certificates) os << "  [" << c << "]\n";
            });
        }
        return kCompleted;
    }
    const auto& p = require_program(pb);
    auto d = build_derived(p);
    Vec z = parse_point(o.point, p.n, "--point");
    auto lambda = optional_point(o.lambda, p.m, "--lambda");

    if (o.kind == "convex") {
        auto v = convex_sufficiency(p, d, z);
        emit(to_json(v), o.json, [&](std::ostream& os) { print_verdict(os, v); });
        return kCompleted;
    }
    if (auto sk = parse_stationarity_kind(o.kind)) {
        if (*sk == StationarityKind::Implicit || lambda) {
            auto v = check_stationarity(p, d, z, *sk, lambda);
            emit(to_json(v), o.json, [&](std::ostream& os) { print_verdict(os, v); });
            return kCompleted;
        }
        auto sv = check_stationarity_strata(p, d, z, *sk);
        json j = to_json(sv);
        std::size_t agree = 0;
        if (o.samples > 0) {
            for (const auto& s : sample_strata(p, d, z, o.samples, o.seed)) {
                bool at_sample = check_stationarity(p, d, z, *sk, s.lambda).holds;
                for (std::size_t i = 0; i < sv.strata.size(); ++i)
                    if (sv.strata[i].id == s.stratum && sv.per_stratum[i].holds == at_sample) ++agree;
            }
            j["sampling"] = json{{"seed", o.seed}, {"samples", o.samples}, {"agreeing", agree}};
        }
        emit(j, o.json, [&](std::ostream& os) {
            print_strata(os, sv);
            if (o.samples > 0) os << "sampled multipliers agreeing with their stratum: " << agree << "/" << o.samples << " (seed " << o.seed << ")\n";
        });
        return kCompleted;
    }
    if (auto ck = parse_cq_kind(o.kind)) {
        require_feasible(p, d, z);
        if (!cq_needs_lambda(*ck) || lambda) {
            auto v = check_cq(p, d, z, *ck, lambda);
            emit(to_json(v), o.json, [&](std::ostream& os) { print_verdict(os, v); });
            return kCompleted;
        }
        json arr = json::array();
        std::vector<Verdict> vs;
        for (const auto& r : k_stratum_representatives(p, d, z)) {
            vs.push_back(check_cq(p, d, z, *ck, r.lambda));
            vs.back().stratum = r.id;
            arr.push_back(to_json(vs.back()));
        }
        emit(arr, o.json, [&](std::ostream& os) {
            for (const auto& v : vs) print_verdict(os, v);
        });
        return kCompleted;
    }
    throw ParseError("--kind", "unknown kind '" + o.kind + "'");
}

int cmd_pipeline(const Options& o) {
    auto pb = pr::load_problem(o.problem);
    const auto& p = require_program(pb);
    auto d = build_derived(p);
    Vec z = parse_point(o.point, p.n, "--point");
    auto r = run_pipeline(p, d, z);
    emit(to_json(r), o.json, [&](std::ostream& os) {
        os << "point " << to_string(r.point) << "\n";
        os << "perturbed multiplier map locally bounded: " << (r.khat_locally_bounded ? "yes" : "no") << "\n\nchecks:\n";
        for (const auto& n : r.nodes) os << "  " << n.id << ": " << n.status << "  [" << n.anchor << "]\n";
        os << "\nimplications:\n";
        for (const auto& e : r.edges) {
            os << "  ";
            for (std::size_t i = 0; i < e.from.size(); ++i) os << (i ? " + " : "") << e.from[i];
            os << " => " << e.to << ": " << e.status << "  [" << e.anchor << "]\n";
        }
        os << "\nbranches:\n";
        for (const auto& [b, s] : r.branches) os << "  (" << b << ") " << s << "\n";
        os << "\nconclusions:\n";
        for (const auto& c : r.conclusions) os << "  " << c << "\n";
        if (!r.consistent()) {
            os << "\ninconsistencies:\n";
            for (const auto& c : r.inconsistencies) os << "  " << c << "\n";
        }
    });
    return kCompleted;
}

int cmd_cones(const Options& o) {
    auto pb = pr::load_problem(o.problem);
    PolyUnion S;
    if (pb.set) {
        S = *pb.set;
    } else {
        const auto& p = require_program(pb);
        if (o.map == "M")
            S = p.base_set;
        else if (o.map == "sparsity" && pb.ccmp_bundle)
            S = pb.ccmp_bundle->sparsity_set;
        else
            S = select_map(pb, build_derived(p), o.map).graph();
    }
    Vec x = parse_point(o.point, S.dim(), "--point");
    if (!S.contains(x)) throw PreconditionError("cones: the point " + to_string(x) + " is not in the set");
    auto T = tangent_cone(S, x);
    PolyUnion Nhat(regular_normal_cone(S, x));
    auto N = limiting_normal_cone(S, x);
    json j{{"point", to_json(x)}, {"tangent", to_json(T)}, {"regular_normal", to_json(Nhat)}, {"limiting_normal", to_json(N)}};
    emit(j, o.json, [&](std::ostream& os) {
        print_union(os, "tangent cone", T);
        print_union(os, "regular normal cone", Nhat);
        print_union(os, "limiting normal cone", N);
    });
    return kCompleted;
}

int cmd_coderiv(const Options& o) {
    auto pb = pr::load_problem(o.problem);
    PolyMapping F;
    if (pb.mapping) {
        F = *pb.mapping;
    } else {
        const auto& p = require_program(pb);
        F = select_map(pb, build_derived(p), o.map);
    }
    Vec z = parse_point(o.point, F.n_in(), "--point");
    Vec w = o.image.empty() ? zeros(F.n_out()) : parse_point(o.image, F.n_out(), "--image");
    if (!F.in_graph(z, w)) throw PreconditionError("coderiv: (" + to_string(z) + ", " + to_string(w) + ") is not in the graph");
    if (o.eta.empty()) {
        auto D = mappings::coderivative(F, z, w);
        json j{{"point", to_json(z)}, {"image", to_json(w)}, {"coderivative", mappings::to_json(D)}};
        emit(j, o.json, [&](std::ostream& os) { print_union(os, "graph of the coderivative over (eta, xi)", D.graph()); });
        return kCompleted;
    }
    Vec eta = parse_point(o.eta, F.n_out(), "--eta");
    auto X = mappings::coderivative_at(F, z, w, eta);
    json j{{"point", to_json(z)}, {"image", to_json(w)}, {"eta", to_json(eta)}, {"value", to_json(X)}};
    emit(j, o.json, [&](std::ostream& os) { print_union(os, "coderivative value", X); });
    return kCompleted;
}

int cmd_relate(const Options& o) {
    auto pb = pr::load_problem(o.problem);
    std::optional<DerivedMaps> d;
    pr::GridModel model;
    if (pb.oracle_only) {
        model = pr::grid_model(*pb.oracle_only);
    } else {
        const auto& p = require_program(pb);
        d = build_derived(p);
        model = pr::grid_model(p, *d);
    }
    auto r = pr::oracle_relate(model, grid_config(o, model.n + model.m));
    emit(pr::to_json(r), o.json, [&](std::ostream& os) {
        if (!r.has_data) {
            os << "no data: no feasible grid point in the box\n";
            return;
        }
        auto list = [&](const char* title, const std::vector<Vec>& pts) {
            os << title << " (" << pts.size() << "):";
            for (std::size_t i = 0; i < pts.size() && i < 20; ++i) os << " " << to_string(pts[i]);
            if (pts.size() > 20) os << " ...";
            os << "\n";
        };
        os << "feasible grid points: " << std::count_if(r.p_rows.begin(), r.p_rows.end(), [](const auto& row) { return row.feasible; })
           << " (P), " << r.q_rows.size() << " (Q)\n";
        list("grid-local minimizers of (P)", r.p_local);
        list("grid-global minimizers of (P)", r.p_global);
        list("grid-local minimizers of (Q)", r.q_local);
        list("grid-global minimizers of (Q)", r.q_global);
        os << "global minimizers correspond: " << (r.global_correspondence ? "yes" : "no") << "\n";
        os << "local minimizers of (P) lifting to non-local points of (Q): " << r.local_direction_violations.size() << "\n";
        os << "counterexamples (local in (Q), not local in (P)): " << r.counterexamples.size() << "\n";
        for (std::size_t i = 0; i < r.counterexamples.size() && i < 20; ++i) {
            const auto& c = r.counterexamples[i];
            os << "  z = " << to_string(c.z) << ", lambda = " << to_string(c.lambda)
               << (c.all_grid_multipliers_local ? "  (every grid multiplier local)" : "") << "  K locally bounded: "
               << (c.k_locally_bounded ? (*c.k_locally_bounded ? "yes" : "no") : "uncertified") << "\n";
        }
    });
    return kCompleted;
}

int cmd_crosscheck(const Options& o) {
    auto pb = pr::load_problem(o.problem);
    if (!pb.ccmp) throw PreconditionError("crosscheck applies to ccmp problems only");
    const auto& in = *pb.ccmp;
    const auto& bundle = *pb.ccmp_bundle;
    auto d = build_derived(bundle.program);
    std::vector<Vec> points;
    if (!o.point.empty()) {
        points.push_back(parse_point(o.point, in.n, "--point"));
        require_feasible(bundle.program, d, points.front());
    } else {
        std::vector<Vec> all{Vec{}};
        for (std::size_t i = 0; i < in.n; ++i) {
            std::vector<Vec> next;
            for (const auto& v : all)
                for (long t : {-1L, 0L, 1L}) {
                    Vec w = v;
                    w.emplace_back(t);
                    next.push_back(std::move(w));
                }
            all = std::move(next);
        }
        for (auto& z : all)
            if (is_feasible(bundle.program, d, z)) points.push_back(std::move(z));
    }
    json arr = json::array();
    std::vector<pr::CcmpCrossCheck> reports;
    bool all = true;
    for (const auto& z : points) {
        reports.push_back(pr::ccmp_cross_check(in, bundle, d, z));
        all = all && reports.back().all_pass();
        arr.push_back(json{{"point", to_json(z)}, {"report", pr::to_json(reports.back())}});
    }
    json j{{"points", arr}, {"all_pass", all}};
    emit(j, o.json, [&](std::ostream& os) {
        auto yn = [](bool b) { return b ? "pass" : "FAIL"; };
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& r = reports[i];
            os << to_string(points[i]) << ": normal cone " << yn(r.normal_cone_equal) << ", multipliers " << yn(r.multipliers_equal)
               << ", explicit constant over " << r.strata << " strata " << yn(r.explicit_constant_over_strata) << ", explicit closed form "
               << yn(r.explicit_matches_closed_form) << ", locally bounded " << yn(r.multipliers_locally_bounded) << ", singleton rule "
               << yn(r.singleton_iff_full_support) << "\n";
        }
        os << (all ? "all equalities pass" : "some equalities FAIL") << "\n";
    });
    return kCompleted;
}

int guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const StructuralError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kParse;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kPrecondition;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact M-stationarity verifier for programs with polyhedral data"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--problem", o.problem, "Problem file (JSON)")->required();
        sub->add_option("--point", o.point, "Point as comma separated rationals, e.g. --point=-1,1/2");
        sub->add_flag("--json", o.json, "Emit the JSON report");
    };
    auto* check = app.add_subcommand("check", "Decide one stationarity system or qualification condition");
    common(check);
    check->add_option("--kind", o.kind, "implicit|fuzzy|explicit|convex|<cq name>|fully_explicit|bilevel_multipliers")->required();
    check->add_option("--lambda", o.lambda, "Multiplier for fuzzy, explicit and λ-dependent conditions");
    check->add_option("--samples", o.samples, "Sample this many multipliers per query to cross-check the strata verdicts");
    check->add_option("--seed", o.seed, "Seed for sampling");

    auto* pipe = app.add_subcommand("pipeline", "Run every check and report the implication graph");
    common(pipe);

    auto* cones = app.add_subcommand("cones", "Tangent and normal cones of a set at a point");
    common(cones);
    cones->add_option("--map", o.map, "Set of a program: M, sparsity, or the graph of F, G, H, HM, K, Khat, joint, jointM");

    auto* cod = app.add_subcommand("coderiv", "Coderivative of a mapping at a graph point");
    common(cod);
    cod->add_option("--map", o.map, "Mapping of a program: F, G, H, HM, K, Khat, joint, jointM");
    cod->add_option("--image", o.image, "Image point w (default 0)");
    cod->add_option("--eta", o.eta, "Direction; without it the whole coderivative graph is printed");

    auto* rel = app.add_subcommand("relate", "Grid oracle relating minimizers of the implicit and explicit problems");
    common(rel);
    rel->add_option("--grid-step", o.grid_step, "Grid step p/q")->capture_default_str();
    rel->add_option("--box", o.box, "lo..hi per coordinate of (z, lambda), comma separated; one range applies to all")->allow_extra_args(false);
    rel->add_option("--radius", o.radius, "Locality radius in grid steps")->capture_default_str();
    rel->add_option("--seed", o.seed, "Unused by the deterministic grid; accepted for uniform scripting");

    auto* cc = app.add_subcommand("crosscheck", "Closed forms versus engine output for a ccmp problem");
    common(cc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    if (check->parsed()) return guarded([&] { return cmd_check(o); });
    if (pipe->parsed()) return guarded([&] { return cmd_pipeline(o); });
    if (cones->parsed()) return guarded([&] { return cmd_cones(o); });
    if (cod->parsed()) return guarded([&] { return cmd_coderiv(o); });
    if (rel->parsed()) return guarded([&] { return cmd_relate(o); });
    return guarded([&] { return cmd_crosscheck(o); });
}
