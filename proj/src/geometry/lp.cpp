#include "mstat/geometry/lp.hpp"

#include "mstat/core/errors.hpp"

namespace mstat::geometry {

namespace {

constexpr long kNone = -1;

// Dense tableau over nonnegative columns; obj holds reduced costs (maximization).
struct Tableau {
    std::vector<Vec> rows;
    Vec rhs;
    std::vector<long> basis;
    std::size_t ncols = 0;
    Vec obj;
    Rational obj_value = 0;

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / rows[r][c];
        for (std::size_t j = 0; j < ncols; ++j)
            if (sgn(rows[r][j]) != 0) rows[r][j] *= inv;
        rhs[r] *= inv;
        auto eliminate = [&](Vec& row, Rational& rv) {
            if (sgn(row[c]) == 0) return;
            Rational f = row[c];
            for (std::size_t j = 0; j < ncols; ++j)
                if (sgn(rows[r][j]) != 0) row[j] -= f * rows[r][j];
            rv -= f * rhs[r];
        };
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r) eliminate(rows[i], rhs[i]);
        // obj row stores reduced costs; obj_value is the negated objective offset.
        eliminate(obj, obj_value);
        basis[r] = static_cast<long>(c);
    }

    void set_cost(const Vec& cost) {
        obj = cost;
        obj_value = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto b = static_cast<std::size_t>(basis[r]);
            if (sgn(obj[b]) == 0) continue;
            Rational f = obj[b];
            for (std::size_t j = 0; j < ncols; ++j)
                if (sgn(rows[r][j]) != 0) obj[j] -= f * rows[r][j];
            obj_value -= f * rhs[r];
        }
    }

    // Returns false when unbounded in an allowed column.
    bool optimize(const std::vector<bool>& allowed) {
        while (true) {
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < ncols; ++j)
                if (allowed[j] && sgn(obj[j]) > 0) {
                    enter = j;
                    break;
                }
            if (enter == ncols) return true;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (sgn(rows[r][enter]) <= 0) continue;
                Rational ratio = rhs[r] / rows[r][enter];
                if (leave == rows.size() || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult lp_maximize(std::size_t n, const Mat& A, const Vec& b, const Mat& E, const Vec& d, const Vec& c) {
    if (A.size() != b.size() || E.size() != d.size() || c.size() != n)
        throw StructuralError("lp_maximize: inconsistent sizes");
    for (const auto& row : A)
        if (row.size() != n) throw StructuralError("lp_maximize: inequality row length");
    for (const auto& row : E)
        if (row.size() != n) throw StructuralError("lp_maximize: equality row length");

    const std::size_t mA = A.size();
    const std::size_t R = mA + E.size();
    const std::size_t width = n + mA;

    // Rows: A x + s = b, E x = d.
    std::vector<Vec> T(R, zeros(width));
    Vec rhs(R);
    std::vector<long> basis(R, kNone);
    for (std::size_t i = 0; i < mA; ++i) {
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1;
        rhs[i] = b[i];
        basis[i] = static_cast<long>(n + i);
    }
    for (std::size_t i = 0; i < E.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) T[mA + i][j] = E[i][j];
        rhs[mA + i] = d[i];
    }

    auto pivot_full = [&](std::size_t r, std::size_t col) {
        Rational inv = 1 / T[r][col];
        for (auto& x : T[r])
            if (sgn(x) != 0) x *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || sgn(T[i][col]) == 0) continue;
            Rational f = T[i][col];
            for (std::size_t j = 0; j < width; ++j)
                if (sgn(T[r][j]) != 0) T[i][j] -= f * T[r][j];
            rhs[i] -= f * rhs[r];
        }
        basis[r] = static_cast<long>(col);
    };

    // Phase 0: pivot the free variables into the basis, preferring equality rows.
    std::vector<bool> xrow(R, false);
    std::vector<long> x_row_of(n, kNone);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t pick = R;
        for (std::size_t r = 0; r < R; ++r) {
            if (xrow[r] || sgn(T[r][j]) == 0) continue;
            if (pick == R || (basis[pick] != kNone && basis[r] == kNone)) pick = r;
        }
        if (pick == R) continue;
        pivot_full(pick, j);
        xrow[pick] = true;
        x_row_of[j] = static_cast<long>(pick);
    }

    // Remaining rows form a standard-form problem in the slack variables.
    Tableau tab;
    std::vector<std::size_t> rem;
    for (std::size_t r = 0; r < R; ++r)
        if (!xrow[r]) rem.push_back(r);
    std::size_t n_art = 0;
    std::vector<bool> needs_art(rem.size(), false);
    for (std::size_t k = 0; k < rem.size(); ++k) {
        std::size_t r = rem[k];
        bool negate = sgn(rhs[r]) < 0;
        bool has_basic = basis[r] != kNone && !negate;
        if (!has_basic) {
            needs_art[k] = true;
            ++n_art;
        }
    }
    tab.ncols = mA + n_art;
    std::size_t art = mA;
    for (std::size_t k = 0; k < rem.size(); ++k) {
        std::size_t r = rem[k];
        Vec row = zeros(tab.ncols);
        for (std::size_t j = 0; j < mA; ++j) row[j] = T[r][n + j];
        Rational h = rhs[r];
        if (sgn(h) < 0) {
            for (auto& x : row) x = -x;
            h = -h;
        }
        long bas;
        if (needs_art[k]) {
            row[art] = 1;
            bas = static_cast<long>(art++);
        } else {
            bas = basis[r] - static_cast<long>(n);
        }
        tab.rows.push_back(std::move(row));
        tab.rhs.push_back(h);
        tab.basis.push_back(bas);
    }

    LpResult result;
    std::vector<bool> allowed(tab.ncols, true);
    if (n_art > 0) {
        Vec cost = zeros(tab.ncols);
        for (std::size_t j = mA; j < tab.ncols; ++j) cost[j] = -1;
        tab.set_cost(cost);
        tab.optimize(allowed);
        if (sgn(tab.obj_value) != 0) {
            result.status = LpStatus::Infeasible;
            return result;
        }
        // Drive artificials out of the basis; drop redundant rows.
        for (std::size_t r = 0; r < tab.rows.size();) {
            if (static_cast<std::size_t>(tab.basis[r]) < mA) {
                ++r;
                continue;
            }
            std::size_t col = mA;
            for (std::size_t j = 0; j < mA; ++j)
                if (sgn(tab.rows[r][j]) != 0) {
                    col = j;
                    break;
                }
            if (col < mA) {
                tab.pivot(r, col);
                ++r;
            } else {
                tab.rows.erase(tab.rows.begin() + static_cast<std::ptrdiff_t>(r));
                tab.rhs.erase(tab.rhs.begin() + static_cast<std::ptrdiff_t>(r));
                tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(r));
            }
        }
        for (std::size_t j = mA; j < tab.ncols; ++j) allowed[j] = false;
    }

    // Objective expressed in the slack variables.
    bool free_direction = false;
    for (std::size_t j = 0; j < n; ++j) {
        if (x_row_of[j] != kNone) continue;
        Rational red = c[j];
        for (std::size_t jj = 0; jj < n; ++jj) {
            if (x_row_of[jj] == kNone) continue;
            red -= c[jj] * T[static_cast<std::size_t>(x_row_of[jj])][j];
        }
        if (sgn(red) != 0) free_direction = true;
    }
    Vec cost = zeros(tab.ncols);
    for (std::size_t k = 0; k < mA; ++k) {
        Rational v = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (x_row_of[j] == kNone) continue;
            v -= c[j] * T[static_cast<std::size_t>(x_row_of[j])][n + k];
        }
        cost[k] = v;
    }
    tab.set_cost(cost);
    bool bounded = tab.optimize(allowed) && !free_direction;

    Vec s = zeros(mA);
    for (std::size_t r = 0; r < tab.rows.size(); ++r) {
        auto bcol = static_cast<std::size_t>(tab.basis[r]);
        if (bcol < mA) s[bcol] = tab.rhs[r];
    }
    Vec x = zeros(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (x_row_of[j] == kNone) continue;
        auto r = static_cast<std::size_t>(x_row_of[j]);
        Rational v = rhs[r];
        for (std::size_t k = 0; k < mA; ++k)
            if (sgn(T[r][n + k]) != 0) v -= T[r][n + k] * s[k];
        x[j] = v;
    }
    result.x = std::move(x);
    if (!bounded) {
        result.status = LpStatus::Unbounded;
        return result;
    }
    result.status = LpStatus::Optimal;
    result.value = dot(c, result.x);
    return result;
}

}  // namespace mstat::geometry
