#include "mstat/problems/oracle.hpp"

#include "mstat/core/errors.hpp"
#include "mstat/geometry/json_io.hpp"

#include <algorithm>
#include <map>

namespace mstat::problems {

using namespace geometry;
using geometry::to_json;

namespace {

constexpr std::size_t kMaxGridPoints = 20'000'000;

using Index = std::vector<long>;

struct Axis {
    Rational lo;
    long count;
};

std::vector<Axis> axes(const GridConfig& c, std::size_t from, std::size_t k) {
    std::vector<Axis> out;
    for (std::size_t i = from; i < from + k; ++i) {
        const auto& [lo, hi] = c.box[i];
        if (hi < lo) throw PreconditionError("grid: empty box in coordinate " + std::to_string(i));
        Rational span = (hi - lo) / c.step;
        mpz_class cnt = span.get_num() / span.get_den();
        if (cnt > 1'000'000) throw ResourceLimitError("grid: too many points per coordinate");
        out.push_back({lo, cnt.get_si() + 1});
    }
    return out;
}

Vec point_of(const std::vector<Axis>& ax, const Index& idx, const Rational& step) {
    Vec x(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) x[i] = ax[i].lo + step * idx[i];
    return x;
}

// Calls fn on every index vector of the box, last coordinate fastest.
template <class Fn>
void for_each_index(const std::vector<long>& counts, Fn&& fn) {
    Index idx(counts.size(), 0);
    if (std::any_of(counts.begin(), counts.end(), [](long c) { return c <= 0; })) return;
    while (true) {
        fn(idx);
        std::size_t i = counts.size();
        while (i > 0) {
            --i;
            if (++idx[i] < counts[i]) break;
            idx[i] = 0;
            if (i == 0) return;
        }
        if (counts.empty()) return;
    }
}

// Offsets in [-r, r]^k without the origin.
std::vector<Index> neighborhood(std::size_t k, std::size_t r) {
    std::vector<Index> out;
    for_each_index(std::vector<long>(k, 2 * static_cast<long>(r) + 1), [&](const Index& o) {
        Index d(k);
        bool zero = true;
        for (std::size_t i = 0; i < k; ++i) {
            d[i] = o[i] - static_cast<long>(r);
            zero = zero && d[i] == 0;
        }
        if (!zero) out.push_back(std::move(d));
    });
    return out;
}

bool contains_point(const std::vector<Vec>& pts, const Vec& x) { return std::find(pts.begin(), pts.end(), x) != pts.end(); }

}  // namespace

GridModel grid_model(const stationarity::ImplicitProgram& p, const stationarity::DerivedMaps& d) {
    GridModel g;
    g.n = p.n;
    g.m = p.m;
    g.objective = [f = p.objective](const Vec& z) { return f.value(z); };
    g.p_feasible = [&p, &d](const Vec& z) { return stationarity::is_feasible(p, d, z); };
    g.multipliers = [&d](const Vec& z) {
        auto K = mappings::image_at(d.intermediate, z);
        return std::function<bool(const Vec&)>([K](const Vec& l) { return K.contains(l); });
    };
    g.k_locally_bounded = [&d](const Vec& z) { return std::optional<bool>(mappings::locally_bounded_at(d.intermediate, z)); };
    return g;
}

GridModel grid_model(const OracleOnlyProgram& p) {
    GridModel g;
    g.n = p.n;
    g.m = p.m;
    g.objective = p.objective;
    auto multipliers = [p](const Vec& z) {
        std::vector<Vec> K;
        if (!p.in_base_set(z)) return K;
        for (auto& l : p.lambda_values(z))
            if (p.residual_contains(z, l, zeros(1))) K.push_back(l);
        return K;
    };
    g.p_feasible = [multipliers](const Vec& z) { return !multipliers(z).empty(); };
    g.multipliers = [multipliers](const Vec& z) {
        auto K = multipliers(z);
        return std::function<bool(const Vec&)>([K](const Vec& l) { return contains_point(K, l); });
    };
    g.k_locally_bounded = [](const Vec&) { return std::optional<bool>(); };
    return g;
}

RelationReport oracle_relate(const GridModel& model, const GridConfig& c) {
    const std::size_t n = model.n, m = model.m;
    if (c.step <= 0) throw PreconditionError("grid: step must be positive");
    if (c.radius == 0) throw PreconditionError("grid: radius must be at least one step");
    if (c.box.size() != n + m) throw PreconditionError("grid: box needs " + std::to_string(n + m) + " coordinate ranges (z then λ)");
    const auto zax = axes(c, 0, n), lax = axes(c, n, m);
    std::vector<long> zc, lc;
    double total = 1, qtotal = 1;
    for (const auto& a : zax) {
        zc.push_back(a.count);
        total *= static_cast<double>(a.count);
    }
    for (const auto& a : lax) {
        lc.push_back(a.count);
        qtotal *= static_cast<double>(a.count);
    }
    if (total * qtotal > static_cast<double>(kMaxGridPoints)) throw ResourceLimitError("grid: more than 2e7 (z, λ) grid points");

    RelationReport r;
    std::map<Index, Rational> p_feasible;
    std::map<Index, Rational> q_feasible;
    std::map<Index, std::size_t> p_row;
    for_each_index(zc, [&](const Index& zi) {
        Vec z = point_of(zax, zi, c.step);
        GridRow row{z, model.p_feasible(z), false, false};
        p_row[zi] = r.p_rows.size();
        r.p_rows.push_back(row);
        if (!row.feasible) return;
        Rational fz = model.objective(z);
        p_feasible[zi] = fz;
        auto inK = model.multipliers(z);
        for_each_index(lc, [&](const Index& li) {
            if (!inK(point_of(lax, li, c.step))) return;
            Index qi = zi;
            qi.insert(qi.end(), li.begin(), li.end());
            q_feasible[qi] = fz;
        });
    });
    r.has_data = !p_feasible.empty();
    if (!r.has_data) return r;

    auto classify = [&](const std::map<Index, Rational>& feas, std::size_t k, auto&& on_point) {
        const auto offsets = neighborhood(k, c.radius);
        Rational best = feas.begin()->second;
        for (const auto& [idx, v] : feas) best = std::min(best, v);
        for (const auto& [idx, v] : feas) {
            bool local = true;
            for (const auto& o : offsets) {
                Index nb = idx;
                for (std::size_t i = 0; i < k; ++i) nb[i] += o[i];
                auto it = feas.find(nb);
                if (it != feas.end() && it->second < v) {
                    local = false;
                    break;
                }
            }
            on_point(idx, local, v == best);
        }
    };

    std::map<Index, bool> p_local;
    classify(p_feasible, n, [&](const Index& idx, bool local, bool global) {
        auto& row = r.p_rows[p_row[idx]];
        row.local_min = local;
        row.global_min = global;
        p_local[idx] = local;
        if (local) r.p_local.push_back(row.point);
        if (global) r.p_global.push_back(row.point);
    });

    std::map<Index, bool> q_local;
    classify(q_feasible, n + m, [&](const Index& idx, bool local, bool global) {
        Index zi(idx.begin(), idx.begin() + n), li(idx.begin() + n, idx.end());
        Vec pt = concat(point_of(zax, zi, c.step), point_of(lax, li, c.step));
        r.q_rows.push_back({pt, true, local, global});
        q_local[idx] = local;
        if (local) r.q_local.push_back(pt);
        if (global) r.q_global.push_back(pt);
    });

    // Global minimizers of (P) versus z-parts of global minimizers of (Q).
    std::vector<Vec> proj;
    for (const auto& q : r.q_global) {
        Vec z = slice(q, 0, n);
        if (!contains_point(proj, z)) proj.push_back(z);
    }
    r.global_correspondence = proj.size() == r.p_global.size() &&
                              std::all_of(proj.begin(), proj.end(), [&](const Vec& z) { return contains_point(r.p_global, z); });

    // Grouped by z: all (Q)-feasible multipliers on the grid.
    std::map<Index, std::vector<Index>> by_z;
    for (const auto& [idx, v] : q_feasible) by_z[Index(idx.begin(), idx.begin() + n)].push_back(idx);
    for (const auto& [zi, qs] : by_z) {
        const bool zl = p_local.at(zi);
        bool all_local = true;
        for (const auto& q : qs) all_local = all_local && q_local.at(q);
        for (const auto& q : qs) {
            Vec z = point_of(zax, zi, c.step);
            Vec l = point_of(lax, Index(q.begin() + n, q.end()), c.step);
            if (zl && !q_local.at(q)) r.local_direction_violations.push_back({z, l});
            if (!zl && q_local.at(q)) r.counterexamples.push_back({z, l, all_local, model.k_locally_bounded ? model.k_locally_bounded(z) : std::nullopt});
        }
    }
    return r;
}

bool RelationReport::p_is_local(const Vec& z) const { return contains_point(p_local, z); }
bool RelationReport::p_is_global(const Vec& z) const { return contains_point(p_global, z); }
bool RelationReport::q_is_local(const Vec& z, const Vec& l) const { return contains_point(q_local, concat(z, l)); }
bool RelationReport::q_is_feasible(const Vec& z, const Vec& l) const {
    const Vec x = concat(z, l);
    return std::any_of(q_rows.begin(), q_rows.end(), [&](const GridRow& row) { return row.point == x; });
}

json to_json(const RelationReport& r) {
    auto rows = [](const std::vector<GridRow>& v, bool feasible_only) {
        json a = json::array();
        for (const auto& row : v)
            if (!feasible_only || row.feasible)
                a.push_back(json{{"point", to_json(row.point)}, {"feasible", row.feasible}, {"local_min", row.local_min}, {"global_min", row.global_min}});
        return a;
    };
    auto points = [](const std::vector<Vec>& v) {
        json a = json::array();
        for (const auto& x : v) a.push_back(to_json(x));
        return a;
    };
    json viol = json::array(), cex = json::array();
    for (const auto& [z, l] : r.local_direction_violations) viol.push_back(json{{"z", to_json(z)}, {"lambda", to_json(l)}});
    for (const auto& c : r.counterexamples) {
        json e{{"z", to_json(c.z)}, {"lambda", to_json(c.lambda)}, {"all_grid_multipliers_local", c.all_grid_multipliers_local}};
        e["k_locally_bounded"] = c.k_locally_bounded ? json(*c.k_locally_bounded) : json("uncertified");
        cex.push_back(std::move(e));
    }
    if (!r.has_data) return json{{"has_data", false}, {"reason", "no feasible grid point of (P) in the box"}};
    return json{{"has_data", true},
                {"p_table", rows(r.p_rows, true)},
                {"q_table", rows(r.q_rows, true)},
                {"p_local", points(r.p_local)},
                {"p_global", points(r.p_global)},
                {"q_local", points(r.q_local)},
                {"q_global", points(r.q_global)},
                {"global_correspondence", r.global_correspondence},
                {"local_direction_violations", viol},
                {"counterexamples", cex}};
}

}  // namespace mstat::problems
