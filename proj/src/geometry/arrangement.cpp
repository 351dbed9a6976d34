#include "mstat/geometry/arrangement.hpp"

#include "mstat/core/errors.hpp"

#include <algorithm>
#include <set>

namespace mstat::geometry {

std::vector<Hyperplane> normalize_hyperplanes(const std::vector<Hyperplane>& hs) {
    std::set<std::pair<Vec, Rational>> seen;
    std::vector<Hyperplane> out;
    for (const auto& h : hs) {
        auto it = std::find_if(h.a.begin(), h.a.end(), [](const Rational& q) { return sgn(q) != 0; });
        if (it == h.a.end()) continue;
        Rational f = 1 / *it;
        Vec a = scale(f, h.a);
        Rational b = f * h.b;
        if (seen.emplace(a, b).second) out.push_back({std::move(a), std::move(b)});
    }
    return out;
}

namespace {

// max t s.t. base, sign conditions with strict ones shifted by t, t <= 1.
LpResult strict_lp(const ConvexPolyhedron& base, const std::vector<Hyperplane>& hs, const std::vector<int>& signs) {
    const std::size_t n = base.dim + 1;
    Mat A;
    Vec b;
    Mat E;
    Vec d;
    auto ext = [&](const Vec& a, const Rational& t) {
        Vec r = a;
        r.push_back(t);
        return r;
    };
    for (std::size_t i = 0; i < base.A.size(); ++i) {
        A.push_back(ext(base.A[i], 0));
        b.push_back(base.b[i]);
    }
    for (std::size_t i = 0; i < base.E.size(); ++i) {
        E.push_back(ext(base.E[i], 0));
        d.push_back(base.d[i]);
    }
    for (std::size_t k = 0; k < signs.size(); ++k) {
        const auto& h = hs[k];
        if (signs[k] == 0) {
            E.push_back(ext(h.a, 0));
            d.push_back(h.b);
        } else if (signs[k] < 0) {
            A.push_back(ext(h.a, 1));
            b.push_back(h.b);
        } else {
            A.push_back(ext(neg(h.a), 1));
            b.push_back(-h.b);
        }
    }
    Vec cap = zeros(n);
    cap[base.dim] = 1;
    A.push_back(cap);
    b.push_back(1);
    return lp_maximize(n, A, b, E, d, cap);
}

bool has_strict(const std::vector<int>& signs) {
    return std::any_of(signs.begin(), signs.end(), [](int s) { return s != 0; });
}

std::optional<Vec> strict_point(const ConvexPolyhedron& base, const std::vector<Hyperplane>& hs, const std::vector<int>& signs) {
    auto r = strict_lp(base, hs, signs);
    if (r.status != LpStatus::Optimal) return std::nullopt;
    if (has_strict(signs) && sgn(r.value) <= 0) return std::nullopt;
    r.x.pop_back();
    return r.x;
}

}  // namespace

ConvexPolyhedron cell_closure(const ConvexPolyhedron& base, const std::vector<Hyperplane>& hs, const std::vector<int>& signs) {
    ConvexPolyhedron P = base;
    for (std::size_t k = 0; k < signs.size(); ++k) {
        if (signs[k] == 0)
            P.add_eq(hs[k].a, hs[k].b);
        else if (signs[k] < 0)
            P.add_ineq(hs[k].a, hs[k].b);
        else
            P.add_ineq(neg(hs[k].a), -hs[k].b);
    }
    return P;
}

std::optional<Vec> central_point(const ConvexPolyhedron& base, const std::vector<Hyperplane>& hs, const std::vector<int>& signs) {
    return strict_point(base, hs, signs);
}

std::vector<Cell> arrangement_cells(const ConvexPolyhedron& base, const std::vector<Hyperplane>& hs, bool central) {
    for (const auto& h : hs)
        if (h.a.size() != base.dim) throw StructuralError("arrangement: hyperplane dimension mismatch");
    auto start = lp_feasible(base);
    if (!start.feasible) return {};
    std::vector<Cell> cells{{{}, *start.witness}};
    for (std::size_t k = 0; k < hs.size(); ++k) {
        std::vector<Cell> next;
        for (auto& c : cells) {
            Rational v = dot(hs[k].a, c.point) - hs[k].b;
            int s0 = sgn(v);
            for (int s : {-1, 0, 1}) {
                std::vector<int> signs = c.signs;
                signs.push_back(s);
                if (s == s0) {
                    next.push_back({std::move(signs), c.point});
                    continue;
                }
                auto p = strict_point(base, hs, signs);
                if (p) next.push_back({std::move(signs), std::move(*p)});
            }
        }
        if (next.size() > limits::max_cells)
            throw ResourceLimitError("arrangement: more than " + std::to_string(limits::max_cells) + " cells");
        cells = std::move(next);
    }
    if (central)
        for (auto& c : cells)
            if (auto p = strict_point(base, hs, c.signs)) c.point = std::move(*p);
    return cells;
}

}  // namespace mstat::geometry
