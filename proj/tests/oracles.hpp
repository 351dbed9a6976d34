#pragma once

// Independent reference computations used as test oracles. They only rely on
// point membership and the LP solver, never on projection or stratification.

#include "support.hpp"

#include <functional>

namespace testsupport {

/// y in cone(active inequality rows) + span(equality rows) of piece P at p.
inline bool convex_normal_oracle(const ConvexPolyhedron& P, const Vec& p, const Vec& y) {
    std::vector<Vec> cols;
    std::size_t n_nonneg = 0;
    for (std::size_t i = 0; i < P.A.size(); ++i)
        if (mstat::dot(P.A[i], p) == P.b[i]) {
            cols.push_back(P.A[i]);
            ++n_nonneg;
        }
    for (const auto& e : P.E) cols.push_back(e);
    const std::size_t k = cols.size(), n = P.dim;
    Mat A, E;
    Vec b, d;
    for (std::size_t i = 0; i < n_nonneg; ++i) {
        Vec r = mstat::zeros(k);
        r[i] = -1;
        A.push_back(r);
        b.push_back(0);
    }
    for (std::size_t j = 0; j < n; ++j) {
        Vec r(k);
        for (std::size_t i = 0; i < k; ++i) r[i] = cols[i][j];
        E.push_back(r);
        d.push_back(y[j]);
    }
    auto res = mstat::geometry::lp_maximize(k, A, b, E, d, mstat::zeros(k));
    return res.status != mstat::geometry::LpStatus::Infeasible;
}

/// y regular normal to U at p: normal to every piece containing p.
inline bool regular_normal_oracle(const PolyUnion& U, const Vec& p, const Vec& y) {
    for (const auto& P : U.pieces())
        if (P.contains(p) && !convex_normal_oracle(P, p, y)) return false;
    return true;
}

/// Points of U near x: x + t*dir for dir in {-1,0,1}^n and the given step sizes.
inline std::vector<Vec> nearby_points(const PolyUnion& U, const Vec& x, std::vector<Rational> steps) {
    std::vector<Vec> pts;
    const std::size_t n = x.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (const auto& t : steps)
        for (std::size_t code = 0; code < total; ++code) {
            Vec p = x;
            std::size_t c = code;
            for (std::size_t i = 0; i < n; ++i) {
                long s = static_cast<long>(c % 3) - 1;
                c /= 3;
                p[i] += t * s;
            }
            if (U.contains(p)) pts.push_back(p);
        }
    return pts;
}

/// Limiting normals sampled as regular normals at nearby points.
inline bool sampled_limiting_normal(const PolyUnion& U, const std::vector<Vec>& pts, const Vec& y) {
    for (const auto& p : pts)
        if (regular_normal_oracle(U, p, y)) return true;
    return false;
}

/// All integer vectors in [-r, r]^n.
inline std::vector<Vec> integer_box(std::size_t n, long r) {
    std::vector<Vec> out{Vec{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Vec> next;
        for (const auto& v : out)
            for (long x = -r; x <= r; ++x) {
                Vec w = v;
                w.emplace_back(x);
                next.push_back(w);
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace testsupport
