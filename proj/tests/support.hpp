#pragma once

#include "mstat/geometry/cones.hpp"

#include <initializer_list>
#include <random>

namespace testsupport {

using mstat::Mat;
using mstat::Rational;
using mstat::Vec;
using mstat::geometry::ConvexPolyhedron;
using mstat::geometry::PolyUnion;

inline Vec V(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline Rational Q(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

struct Row {
    Vec a;
    Rational b;
};

/// {x : a·x <= b for ineqs, a·x = b for eqs}.
inline ConvexPolyhedron poly(std::size_t dim, std::initializer_list<Row> ineqs, std::initializer_list<Row> eqs = {}) {
    ConvexPolyhedron P(dim);
    for (const auto& r : ineqs) P.add_ineq(r.a, r.b);
    for (const auto& r : eqs) P.add_eq(r.a, r.b);
    return P;
}

inline PolyUnion uni(std::initializer_list<ConvexPolyhedron> ps) {
    std::vector<ConvexPolyhedron> v(ps);
    return PolyUnion(v.front().dim, v);
}

/// Coordinate axis i of R^n as a cone.
inline ConvexPolyhedron axis(std::size_t n, std::size_t i) {
    ConvexPolyhedron P(n);
    for (std::size_t j = 0; j < n; ++j)
        if (j != i) P.add_eq(mstat::unit(n, j), Rational(0));
    return P;
}

inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
    std::uniform_int_distribution<long> dist(lo * den, hi * den);
    return Q(dist(rng), den);
}

inline Vec random_vec(std::mt19937_64& rng, std::size_t n, long lo, long hi, long den) {
    Vec v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_rational(rng, lo, hi, den));
    return v;
}

inline bool same_set(const PolyUnion& a, const PolyUnion& b) { return mstat::geometry::equal_unions(a, b); }

}  // namespace testsupport
