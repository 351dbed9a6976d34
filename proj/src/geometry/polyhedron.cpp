#include "mstat/geometry/polyhedron.hpp"

#include "mstat/core/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mstat::geometry {

ConvexPolyhedron::ConvexPolyhedron(std::size_t dim_, Mat A_, Vec b_, Mat E_, Vec d_)
    : dim(dim_), A(std::move(A_)), b(std::move(b_)), E(std::move(E_)), d(std::move(d_)) {
    validate();
}

ConvexPolyhedron ConvexPolyhedron::universe(std::size_t dim) { return ConvexPolyhedron(dim); }

ConvexPolyhedron ConvexPolyhedron::point(const Vec& x) {
    ConvexPolyhedron P(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) P.add_eq(unit(x.size(), i), x[i]);
    return P;
}

ConvexPolyhedron ConvexPolyhedron::empty(std::size_t dim) {
    ConvexPolyhedron P(dim);
    P.add_ineq(zeros(dim), Rational(-1));
    return P;
}

void ConvexPolyhedron::add_ineq(Vec a, Rational rhs) {
    if (a.size() != dim) throw StructuralError("add_ineq: row length " + std::to_string(a.size()) + " != dim " + std::to_string(dim));
    A.push_back(std::move(a));
    b.push_back(std::move(rhs));
}

void ConvexPolyhedron::add_eq(Vec a, Rational rhs) {
    if (a.size() != dim) throw StructuralError("add_eq: row length " + std::to_string(a.size()) + " != dim " + std::to_string(dim));
    E.push_back(std::move(a));
    d.push_back(std::move(rhs));
}

void ConvexPolyhedron::validate() const {
    if (A.size() != b.size()) throw StructuralError("polyhedron: A has " + std::to_string(A.size()) + " rows but b has " + std::to_string(b.size()));
    if (E.size() != d.size()) throw StructuralError("polyhedron: E has " + std::to_string(E.size()) + " rows but d has " + std::to_string(d.size()));
    for (const auto& r : A)
        if (r.size() != dim) throw StructuralError("polyhedron: inequality row length mismatch");
    for (const auto& r : E)
        if (r.size() != dim) throw StructuralError("polyhedron: equality row length mismatch");
}

bool ConvexPolyhedron::contains(const Vec& x) const {
    if (x.size() != dim) throw StructuralError("contains: point dimension mismatch");
    for (std::size_t i = 0; i < A.size(); ++i)
        if (dot(A[i], x) > b[i]) return false;
    for (std::size_t i = 0; i < E.size(); ++i)
        if (dot(E[i], x) != d[i]) return false;
    return true;
}

bool ConvexPolyhedron::is_homogeneous() const {
    return std::all_of(b.begin(), b.end(), [](const Rational& q) { return sgn(q) == 0; }) &&
           std::all_of(d.begin(), d.end(), [](const Rational& q) { return sgn(q) == 0; });
}

LpResult maximize(const ConvexPolyhedron& P, const Vec& c) {
    P.validate();
    return lp_maximize(P.dim, P.A, P.b, P.E, P.d, c);
}

Feasibility lp_feasible(const ConvexPolyhedron& P) {
    auto r = maximize(P, zeros(P.dim));
    Feasibility f;
    if (r.status == LpStatus::Infeasible) return f;
    f.feasible = true;
    f.witness = r.x;
    return f;
}

bool is_empty(const ConvexPolyhedron& P) { return !lp_feasible(P).feasible; }

namespace {

// Scales a row positively so that its coefficients are coprime integers.
void normalize_row(Vec& a, Rational& rhs, bool fix_sign) {
    mpz_class l = 1, g = 0;
    for (const auto& x : a) {
        if (sgn(x) == 0) continue;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    for (const auto& x : a) {
        if (sgn(x) == 0) continue;
        mpz_class v = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (g == 0) return;
    Rational f(l, g);
    if (fix_sign) {
        auto it = std::find_if(a.begin(), a.end(), [](const Rational& q) { return sgn(q) != 0; });
        if (sgn(*it) < 0) f = -f;
    }
    for (auto& x : a) x *= f;
    rhs *= f;
}

struct RowSet {
    std::size_t dim;
    std::vector<std::pair<Vec, Rational>> ineq;
    std::vector<std::pair<Vec, Rational>> eq;
    bool infeasible = false;

    ConvexPolyhedron to_poly() const {
        if (infeasible) return ConvexPolyhedron::empty(dim);
        ConvexPolyhedron P(dim);
        for (const auto& [a, r] : ineq) P.add_ineq(a, r);
        for (const auto& [a, r] : eq) P.add_eq(a, r);
        return P;
    }
};

RowSet rows_of(const ConvexPolyhedron& P) {
    RowSet rs{P.dim, {}, {}, false};
    for (std::size_t i = 0; i < P.A.size(); ++i) rs.ineq.emplace_back(P.A[i], P.b[i]);
    for (std::size_t i = 0; i < P.E.size(); ++i) rs.eq.emplace_back(P.E[i], P.d[i]);
    return rs;
}

// Normalization, dedup, opposite-pair merging and equality reduction (no LPs).
void tidy(RowSet& rs) {
    if (rs.infeasible) return;
    // Equalities: Gaussian reduction to independent rows with explicit pivots.
    struct EqRow {
        Vec a;
        Rational r;
        std::size_t piv;
    };
    std::vector<EqRow> eqs;
    for (auto [a, r] : rs.eq) {
        for (const auto& e : eqs) {
            if (sgn(a[e.piv]) == 0) continue;
            Rational f = a[e.piv] / e.a[e.piv];
            for (std::size_t j = 0; j < rs.dim; ++j) a[j] -= f * e.a[j];
            r -= f * e.r;
        }
        if (is_zero(a)) {
            if (sgn(r) != 0) {
                rs.infeasible = true;
                return;
            }
            continue;
        }
        normalize_row(a, r, true);
        auto it = std::find_if(a.begin(), a.end(), [](const Rational& q) { return sgn(q) != 0; });
        std::size_t p = static_cast<std::size_t>(it - a.begin());
        for (auto& e : eqs) {
            if (sgn(e.a[p]) == 0) continue;
            Rational f = e.a[p] / a[p];
            for (std::size_t j = 0; j < rs.dim; ++j) e.a[j] -= f * a[j];
            e.r -= f * r;
            normalize_row(e.a, e.r, false);
        }
        eqs.push_back({std::move(a), std::move(r), p});
    }
    rs.eq.clear();
    std::vector<std::size_t> pivots;
    for (auto& e : eqs) {
        pivots.push_back(e.piv);
        rs.eq.emplace_back(std::move(e.a), std::move(e.r));
    }

    std::map<Vec, Rational> best;
    for (auto [a, r] : rs.ineq) {
        // Reduce by equalities so that equal rows compare equal.
        for (std::size_t k = 0; k < rs.eq.size(); ++k) {
            std::size_t piv = pivots[k];
            if (sgn(a[piv]) == 0) continue;
            const auto& [ea, er] = rs.eq[k];
            Rational f = a[piv] / ea[piv];
            for (std::size_t j = 0; j < rs.dim; ++j) a[j] -= f * ea[j];
            r -= f * er;
        }
        if (is_zero(a)) {
            if (sgn(r) < 0) {
                rs.infeasible = true;
                return;
            }
            continue;
        }
        normalize_row(a, r, false);
        auto it = best.find(a);
        if (it == best.end())
            best.emplace(std::move(a), std::move(r));
        else if (r < it->second)
            it->second = r;
    }
    rs.ineq.clear();
    std::vector<std::pair<Vec, Rational>> new_eq;
    for (const auto& [a, r] : best) {
        auto opp = best.find(neg(a));
        if (opp != best.end()) {
            // a x <= r and -a x <= r'  =>  -r' <= a x <= r
            if (r < -opp->second) {
                rs.infeasible = true;
                return;
            }
            if (r == -opp->second) {
                if (a < opp->first) new_eq.emplace_back(a, r);
                continue;
            }
        }
        rs.ineq.emplace_back(a, r);
    }
    if (!new_eq.empty()) {
        for (auto& e : new_eq) rs.eq.push_back(std::move(e));
        tidy(rs);
    }
}

// Drops inequality rows implied by the remaining system.
void remove_redundant(RowSet& rs) {
    if (rs.infeasible) return;
    ConvexPolyhedron P = rs.to_poly();
    if (is_empty(P)) {
        rs.infeasible = true;
        return;
    }
    std::vector<bool> keep(rs.ineq.size(), true);
    for (std::size_t i = 0; i < rs.ineq.size(); ++i) {
        Mat A;
        Vec b;
        for (std::size_t j = 0; j < rs.ineq.size(); ++j) {
            if (j == i || !keep[j]) continue;
            A.push_back(rs.ineq[j].first);
            b.push_back(rs.ineq[j].second);
        }
        Mat E;
        Vec d;
        for (const auto& [e, r] : rs.eq) {
            E.push_back(e);
            d.push_back(r);
        }
        auto res = lp_maximize(rs.dim, A, b, E, d, rs.ineq[i].first);
        if (res.status == LpStatus::Optimal && res.value <= rs.ineq[i].second) keep[i] = false;
    }
    std::vector<std::pair<Vec, Rational>> out;
    for (std::size_t i = 0; i < rs.ineq.size(); ++i)
        if (keep[i]) out.push_back(std::move(rs.ineq[i]));
    rs.ineq = std::move(out);
}

void drop_column(RowSet& rs, std::size_t p) {
    for (auto& [a, r] : rs.ineq) a.erase(a.begin() + static_cast<std::ptrdiff_t>(p));
    for (auto& [a, r] : rs.eq) a.erase(a.begin() + static_cast<std::ptrdiff_t>(p));
    --rs.dim;
}

void check_rows(const RowSet& rs) {
    if (rs.ineq.size() + rs.eq.size() > limits::max_rows)
        throw ResourceLimitError("projection: row count " + std::to_string(rs.ineq.size() + rs.eq.size()) +
                                 " exceeds limit " + std::to_string(limits::max_rows));
}

}  // namespace

ConvexPolyhedron simplify(const ConvexPolyhedron& P) {
    P.validate();
    RowSet rs = rows_of(P);
    tidy(rs);
    remove_redundant(rs);
    return rs.to_poly();
}

ConvexPolyhedron project_out(const ConvexPolyhedron& P, const std::vector<std::size_t>& coords) {
    P.validate();
    if (coords.empty()) return P;
    std::vector<std::size_t> pos_of(P.dim);
    std::iota(pos_of.begin(), pos_of.end(), 0);
    std::vector<bool> eliminate(P.dim, false);
    for (auto c : coords) {
        if (c >= P.dim) throw StructuralError("project_out: coordinate " + std::to_string(c) + " out of range");
        eliminate[c] = true;
    }
    // Current columns are the original coordinates not yet removed.
    std::vector<std::size_t> cols(P.dim);
    std::iota(cols.begin(), cols.end(), 0);
    RowSet rs = rows_of(P);
    tidy(rs);
    auto remaining = [&] {
        std::vector<std::size_t> r;
        for (std::size_t p = 0; p < cols.size(); ++p)
            if (eliminate[cols[p]]) r.push_back(p);
        return r;
    };
    while (!rs.infeasible) {
        auto todo = remaining();
        if (todo.empty()) break;
        // Prefer substitution through an equality row.
        bool substituted = false;
        for (std::size_t ei = 0; ei < rs.eq.size() && !substituted; ++ei) {
            for (auto p : todo) {
                if (sgn(rs.eq[ei].first[p]) == 0) continue;
                auto [e, er] = rs.eq[ei];
                rs.eq.erase(rs.eq.begin() + static_cast<std::ptrdiff_t>(ei));
                auto sub_row = [&](Vec& a, Rational& r) {
                    if (sgn(a[p]) == 0) return;
                    Rational f = a[p] / e[p];
                    for (std::size_t j = 0; j < a.size(); ++j) a[j] -= f * e[j];
                    r -= f * er;
                };
                for (auto& [a, r] : rs.ineq) sub_row(a, r);
                for (auto& [a, r] : rs.eq) sub_row(a, r);
                drop_column(rs, p);
                cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(p));
                substituted = true;
                break;
            }
        }
        if (substituted) {
            tidy(rs);
            continue;
        }
        // Fourier–Motzkin on the cheapest column.
        std::size_t best_p = todo.front();
        long best_cost = -1;
        for (auto p : todo) {
            long pos = 0, negc = 0;
            for (const auto& [a, r] : rs.ineq) {
                if (sgn(a[p]) > 0) ++pos;
                if (sgn(a[p]) < 0) ++negc;
            }
            long cost = pos * negc - pos - negc;
            if (best_cost == -1 || cost < best_cost) {
                best_cost = cost;
                best_p = p;
            }
        }
        std::size_t p = best_p;
        std::vector<std::pair<Vec, Rational>> pos, negr, out;
        for (auto& row : rs.ineq) {
            int s = sgn(row.first[p]);
            if (s > 0)
                pos.push_back(std::move(row));
            else if (s < 0)
                negr.push_back(std::move(row));
            else
                out.push_back(std::move(row));
        }
        for (const auto& [ap, rp] : pos)
            for (const auto& [an, rn] : negr) {
                Rational fp = -an[p], fn = ap[p];
                Vec a(ap.size());
                for (std::size_t j = 0; j < ap.size(); ++j) a[j] = fp * ap[j] + fn * an[j];
                out.emplace_back(std::move(a), fp * rp + fn * rn);
            }
        rs.ineq = std::move(out);
        check_rows(rs);
        drop_column(rs, p);
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(p));
        tidy(rs);
        remove_redundant(rs);
    }
    if (rs.infeasible) return ConvexPolyhedron::empty(P.dim - coords.size());
    tidy(rs);
    remove_redundant(rs);
    return rs.to_poly();
}

ConvexPolyhedron project_onto(const ConvexPolyhedron& P, const std::vector<std::size_t>& coords) {
    std::vector<bool> kept(P.dim, false);
    for (auto c : coords) {
        if (c >= P.dim) throw StructuralError("project_onto: coordinate out of range");
        kept[c] = true;
    }
    std::vector<std::size_t> drop;
    for (std::size_t i = 0; i < P.dim; ++i)
        if (!kept[i]) drop.push_back(i);
    ConvexPolyhedron Q = project_out(P, drop);
    std::vector<std::size_t> sorted = coords;
    std::sort(sorted.begin(), sorted.end());
    // Q's coordinates follow `sorted`; reorder to `coords`.
    std::vector<std::size_t> where(coords.size());
    for (std::size_t k = 0; k < sorted.size(); ++k)
        where[k] = static_cast<std::size_t>(std::find(coords.begin(), coords.end(), sorted[k]) - coords.begin());
    return embed(Q, coords.size(), where);
}

ConvexPolyhedron intersect(const ConvexPolyhedron& P, const ConvexPolyhedron& Q) {
    if (P.dim != Q.dim) throw StructuralError("intersect: dimension mismatch");
    ConvexPolyhedron R = P;
    for (std::size_t i = 0; i < Q.A.size(); ++i) R.add_ineq(Q.A[i], Q.b[i]);
    for (std::size_t i = 0; i < Q.E.size(); ++i) R.add_eq(Q.E[i], Q.d[i]);
    return R;
}

ConvexPolyhedron embed(const ConvexPolyhedron& P, std::size_t dim, const std::vector<std::size_t>& where) {
    if (where.size() != P.dim) throw StructuralError("embed: position list length mismatch");
    ConvexPolyhedron R(dim);
    auto lift = [&](const Vec& a) {
        Vec r = zeros(dim);
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (where[j] >= dim) throw StructuralError("embed: position out of range");
            r[where[j]] += a[j];
        }
        return r;
    };
    for (std::size_t i = 0; i < P.A.size(); ++i) R.add_ineq(lift(P.A[i]), P.b[i]);
    for (std::size_t i = 0; i < P.E.size(); ++i) R.add_eq(lift(P.E[i]), P.d[i]);
    return R;
}

ConvexPolyhedron product(const ConvexPolyhedron& P, const ConvexPolyhedron& Q) {
    std::size_t n = P.dim + Q.dim;
    std::vector<std::size_t> wp(P.dim), wq(Q.dim);
    std::iota(wp.begin(), wp.end(), 0);
    std::iota(wq.begin(), wq.end(), P.dim);
    return intersect(embed(P, n, wp), embed(Q, n, wq));
}

ConvexPolyhedron affine_preimage(const ConvexPolyhedron& P, const Mat& T, const Vec& t, std::size_t cols) {
    if (T.size() != P.dim || t.size() != P.dim) throw StructuralError("affine_preimage: map size mismatch");
    for (const auto& row : T)
        if (row.size() != cols) throw StructuralError("affine_preimage: map row length mismatch");
    ConvexPolyhedron R(cols);
    for (std::size_t i = 0; i < P.A.size(); ++i) {
        Vec a = zeros(cols);
        for (std::size_t k = 0; k < P.dim; ++k) {
            if (sgn(P.A[i][k]) == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) a[j] += P.A[i][k] * T[k][j];
        }
        R.add_ineq(std::move(a), P.b[i] - dot(P.A[i], t));
    }
    for (std::size_t i = 0; i < P.E.size(); ++i) {
        Vec a = zeros(cols);
        for (std::size_t k = 0; k < P.dim; ++k) {
            if (sgn(P.E[i][k]) == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) a[j] += P.E[i][k] * T[k][j];
        }
        R.add_eq(std::move(a), P.d[i] - dot(P.E[i], t));
    }
    return R;
}

ConvexPolyhedron affine_image(const ConvexPolyhedron& P, const Mat& T, const Vec& t, std::size_t rows) {
    if (T.size() != rows || t.size() != rows) throw StructuralError("affine_image: map size mismatch");
    std::size_t n = rows + P.dim;
    std::vector<std::size_t> wx(P.dim);
    std::iota(wx.begin(), wx.end(), rows);
    ConvexPolyhedron L = embed(P, n, wx);
    for (std::size_t i = 0; i < rows; ++i) {
        if (T[i].size() != P.dim) throw StructuralError("affine_image: map row length mismatch");
        Vec a = zeros(n);
        a[i] = 1;
        for (std::size_t j = 0; j < P.dim; ++j) a[rows + j] = -T[i][j];
        L.add_eq(std::move(a), t[i]);
    }
    std::vector<std::size_t> elim(P.dim);
    std::iota(elim.begin(), elim.end(), rows);
    return project_out(L, elim);
}

ConvexPolyhedron fix_coordinates(const ConvexPolyhedron& P, const std::vector<std::size_t>& coords, const Vec& values) {
    if (coords.size() != values.size()) throw StructuralError("fix_coordinates: size mismatch");
    std::vector<long> fixed(P.dim, -1);
    for (std::size_t k = 0; k < coords.size(); ++k) {
        if (coords[k] >= P.dim) throw StructuralError("fix_coordinates: coordinate out of range");
        fixed[coords[k]] = static_cast<long>(k);
    }
    std::size_t n = P.dim - coords.size();
    ConvexPolyhedron R(n);
    auto reduce = [&](const Vec& a, Rational r, auto add) {
        Vec out;
        out.reserve(n);
        for (std::size_t j = 0; j < P.dim; ++j) {
            if (fixed[j] >= 0)
                r -= a[j] * values[static_cast<std::size_t>(fixed[j])];
            else
                out.push_back(a[j]);
        }
        add(std::move(out), std::move(r));
    };
    for (std::size_t i = 0; i < P.A.size(); ++i)
        reduce(P.A[i], P.b[i], [&](Vec a, Rational r) { R.add_ineq(std::move(a), std::move(r)); });
    for (std::size_t i = 0; i < P.E.size(); ++i)
        reduce(P.E[i], P.d[i], [&](Vec a, Rational r) { R.add_eq(std::move(a), std::move(r)); });
    return R;
}

bool contains(const ConvexPolyhedron& outer, const ConvexPolyhedron& inner) {
    if (outer.dim != inner.dim) throw StructuralError("contains: dimension mismatch");
    if (is_empty(inner)) return true;
    for (std::size_t i = 0; i < outer.A.size(); ++i) {
        auto r = maximize(inner, outer.A[i]);
        if (r.status != LpStatus::Optimal || r.value > outer.b[i]) return false;
    }
    for (std::size_t i = 0; i < outer.E.size(); ++i) {
        auto hi = maximize(inner, outer.E[i]);
        if (hi.status != LpStatus::Optimal || hi.value != outer.d[i]) return false;
        auto lo = maximize(inner, neg(outer.E[i]));
        if (lo.status != LpStatus::Optimal || -lo.value != outer.d[i]) return false;
    }
    return true;
}

bool equal_sets(const ConvexPolyhedron& P, const ConvexPolyhedron& Q) { return contains(P, Q) && contains(Q, P); }

std::optional<Vec> nonzero_point(const ConvexPolyhedron& P, const std::vector<std::size_t>& coords) {
    std::vector<std::size_t> cs = coords;
    if (cs.empty()) {
        cs.resize(P.dim);
        std::iota(cs.begin(), cs.end(), 0);
    }
    for (auto i : cs) {
        for (int s : {1, -1}) {
            Vec c = zeros(P.dim);
            c[i] = s;
            auto r = maximize(P, c);
            if (r.status == LpStatus::Infeasible) return std::nullopt;
            if (r.status == LpStatus::Optimal) {
                if (sgn(r.value) > 0) return r.x;
                continue;
            }
            ConvexPolyhedron Q = P;
            Vec a = zeros(P.dim);
            a[i] = -s;
            Q.add_ineq(a, Rational(-1));
            auto f = lp_feasible(Q);
            if (f.feasible) return f.witness;
        }
    }
    return std::nullopt;
}

bool vanishes_on(const ConvexPolyhedron& P, const std::vector<std::size_t>& coords) {
    return !nonzero_point(P, coords).has_value();
}

ConvexPolyhedron recession_cone(const ConvexPolyhedron& P) {
    ConvexPolyhedron R = P;
    for (auto& x : R.b) x = 0;
    for (auto& x : R.d) x = 0;
    return R;
}

bool is_bounded(const ConvexPolyhedron& P) {
    if (is_empty(P)) return true;
    return vanishes_on(recession_cone(P), {});
}

std::optional<Vec> relative_interior_point(const ConvexPolyhedron& P) {
    if (is_empty(P)) return std::nullopt;
    // Rows whose slack cannot become positive are implicit equalities.
    std::vector<bool> implicit(P.A.size(), false);
    for (std::size_t i = 0; i < P.A.size(); ++i) {
        auto r = maximize(P, neg(P.A[i]));
        if (r.status == LpStatus::Optimal && -r.value == P.b[i]) implicit[i] = true;
    }
    std::size_t n = P.dim + 1;
    Mat A;
    Vec b;
    Mat E;
    Vec d;
    for (std::size_t i = 0; i < P.A.size(); ++i) {
        Vec a = P.A[i];
        a.push_back(implicit[i] ? Rational(0) : Rational(1));
        A.push_back(std::move(a));
        b.push_back(P.b[i]);
    }
    for (std::size_t i = 0; i < P.E.size(); ++i) {
        Vec a = P.E[i];
        a.push_back(0);
        E.push_back(std::move(a));
        d.push_back(P.d[i]);
    }
    Vec cap = zeros(n);
    cap[P.dim] = 1;
    A.push_back(cap);
    b.push_back(1);
    auto r = lp_maximize(n, A, b, E, d, cap);
    if (r.status != LpStatus::Optimal) return std::nullopt;
    r.x.pop_back();
    return r.x;
}

Mat selection_matrix(const std::vector<std::size_t>& coords, std::size_t cols) {
    Mat m = zero_matrix(coords.size(), cols);
    for (std::size_t i = 0; i < coords.size(); ++i) m[i][coords[i]] = 1;
    return m;
}

// ---------------------------------------------------------------- unions

PolyUnion::PolyUnion(std::size_t dim, std::vector<ConvexPolyhedron> pieces) : dim_(dim) {
    require_pieces(pieces.size(), "PolyUnion");
    for (auto& p : pieces) {
        if (p.dim != dim) throw StructuralError("PolyUnion: piece dimension " + std::to_string(p.dim) + " != " + std::to_string(dim));
        p.validate();
        if (!geometry::is_empty(p)) pieces_.push_back(std::move(p));
    }
    if (pieces_.empty()) throw PreconditionError("PolyUnion: every piece is empty");
}

PolyUnion::PolyUnion(ConvexPolyhedron piece) : PolyUnion(piece.dim, std::vector<ConvexPolyhedron>{std::move(piece)}) {}

PolyUnion PolyUnion::empty_set(std::size_t dim) {
    PolyUnion u;
    u.dim_ = dim;
    return u;
}

PolyUnion PolyUnion::from_pieces(std::size_t dim, std::vector<ConvexPolyhedron> pieces) {
    require_pieces(pieces.size(), "PolyUnion");
    std::vector<ConvexPolyhedron> kept;
    for (auto& p : pieces) {
        if (p.dim != dim) throw StructuralError("PolyUnion: piece dimension mismatch");
        p.validate();
        if (!geometry::is_empty(p)) kept.push_back(std::move(p));
    }
    if (kept.empty()) return empty_set(dim);
    PolyUnion u;
    u.dim_ = dim;
    u.pieces_ = std::move(kept);
    return u;
}

bool PolyUnion::contains(const Vec& x) const {
    if (x.size() != dim_) throw StructuralError("membership: point dimension " + std::to_string(x.size()) + " != " + std::to_string(dim_));
    return std::any_of(pieces_.begin(), pieces_.end(), [&](const ConvexPolyhedron& p) { return p.contains(x); });
}

bool membership(const PolyUnion& U, const Vec& x) { return U.contains(x); }

PolyUnion prune(const PolyUnion& U) {
    if (U.is_empty()) return U;
    std::vector<ConvexPolyhedron> ps;
    for (const auto& p : U.pieces()) ps.push_back(simplify(p));
    std::vector<bool> keep(ps.size(), true);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (!keep[i]) continue;
        for (std::size_t j = 0; j < ps.size() && keep[i]; ++j) {
            if (i == j || !keep[j]) continue;
            if (contains(ps[j], ps[i])) keep[i] = false;
        }
    }
    std::vector<ConvexPolyhedron> out;
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (keep[i]) out.push_back(std::move(ps[i]));
    return PolyUnion::from_pieces(U.dim(), std::move(out));
}

PolyUnion intersect(const PolyUnion& L, const PolyUnion& R) {
    if (L.dim() != R.dim()) throw StructuralError("intersect: dimension mismatch");
    std::vector<ConvexPolyhedron> out;
    require_pieces(L.size() * R.size(), "intersect");
    for (const auto& p : L.pieces())
        for (const auto& q : R.pieces()) out.push_back(intersect(p, q));
    return PolyUnion::from_pieces(L.dim(), std::move(out));
}

PolyUnion product(const PolyUnion& L, const PolyUnion& R) {
    std::vector<ConvexPolyhedron> out;
    require_pieces(L.size() * R.size(), "product");
    for (const auto& p : L.pieces())
        for (const auto& q : R.pieces()) out.push_back(product(p, q));
    return PolyUnion::from_pieces(L.dim() + R.dim(), std::move(out));
}

PolyUnion unite(const PolyUnion& L, const PolyUnion& R) {
    if (L.dim() != R.dim()) throw StructuralError("unite: dimension mismatch");
    std::vector<ConvexPolyhedron> out = L.pieces();
    out.insert(out.end(), R.pieces().begin(), R.pieces().end());
    return PolyUnion::from_pieces(L.dim(), std::move(out));
}

PolyUnion project_out(const PolyUnion& U, const std::vector<std::size_t>& coords) {
    std::vector<ConvexPolyhedron> out;
    for (const auto& p : U.pieces()) out.push_back(project_out(p, coords));
    return PolyUnion::from_pieces(U.dim() - coords.size(), std::move(out));
}

PolyUnion affine_preimage(const PolyUnion& U, const Mat& T, const Vec& t, std::size_t cols) {
    std::vector<ConvexPolyhedron> out;
    for (const auto& p : U.pieces()) out.push_back(affine_preimage(p, T, t, cols));
    return PolyUnion::from_pieces(cols, std::move(out));
}

PolyUnion affine_image(const PolyUnion& U, const Mat& T, const Vec& t, std::size_t rows) {
    std::vector<ConvexPolyhedron> out;
    for (const auto& p : U.pieces()) out.push_back(affine_image(p, T, t, rows));
    return PolyUnion::from_pieces(rows, std::move(out));
}

PolyUnion fix_coordinates(const PolyUnion& U, const std::vector<std::size_t>& coords, const Vec& values) {
    std::vector<ConvexPolyhedron> out;
    for (const auto& p : U.pieces()) out.push_back(fix_coordinates(p, coords, values));
    return PolyUnion::from_pieces(U.dim() - coords.size(), std::move(out));
}

}  // namespace mstat::geometry
