#include "mstat/stationarity/objective.hpp"

#include "mstat/core/errors.hpp"

namespace mstat::stationarity {

using namespace geometry;
using geometry::to_json;
using mstat::to_string;

Objective Objective::affine(Vec c, Rational c0) {
    Objective f;
    f.kind_ = Kind::Affine;
    f.dim_ = c.size();
    f.rows_ = {std::move(c)};
    f.offsets_ = {c0};
    return f;
}

Objective Objective::max_affine(Mat rows, Vec offsets) {
    if (rows.empty()) throw StructuralError("max_affine: at least one piece is required");
    if (rows.size() != offsets.size()) throw StructuralError("max_affine: rows and offsets differ in length");
    Objective f;
    f.kind_ = Kind::MaxAffine;
    f.dim_ = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != f.dim_) throw StructuralError("max_affine: inconsistent row length");
    f.rows_ = std::move(rows);
    f.offsets_ = std::move(offsets);
    return f;
}

Objective Objective::quadratic(Mat Q, Vec c, Rational c0) {
    const std::size_t n = c.size();
    if (Q.size() != n) throw StructuralError("quadratic: Q must be n x n");
    for (std::size_t i = 0; i < n; ++i) {
        if (Q[i].size() != n) throw StructuralError("quadratic: Q must be n x n");
        for (std::size_t j = 0; j < i; ++j)
            if (Q[i][j] != Q[j][i]) throw StructuralError("quadratic: Q must be symmetric");
    }
    Objective f;
    f.kind_ = Kind::Quadratic;
    f.dim_ = n;
    f.Q_ = std::move(Q);
    f.rows_ = {std::move(c)};
    f.offsets_ = {c0};
    return f;
}

Rational Objective::value(const Vec& z) const {
    if (z.size() != dim_) throw StructuralError("objective: point dimension mismatch");
    switch (kind_) {
        case Kind::Affine:
            return dot(rows_[0], z) + offsets_[0];
        case Kind::MaxAffine: {
            Rational best = dot(rows_[0], z) + offsets_[0];
            for (std::size_t i = 1; i < rows_.size(); ++i) best = std::max(best, Rational(dot(rows_[i], z) + offsets_[i]));
            return best;
        }
        case Kind::Quadratic:
            return Rational(dot(z, mat_vec(Q_, z)) / 2) + dot(rows_[0], z) + offsets_[0];
    }
    return 0;
}

bool Objective::is_convex() const { return kind_ != Kind::Quadratic || is_psd(Q_); }

bool is_psd(const Mat& Q) {
    Mat A = Q;
    const std::size_t n = A.size();
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && A[i][i] != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // Remaining diagonal is zero: PSD only if the remaining block vanishes.
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && A[i][j] != 0) return false;
            return true;
        }
        if (A[p][p] < 0) return false;
        done[p] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || A[i][p] == 0) continue;
            Rational factor = A[i][p] / A[p][p];
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) A[i][j] -= factor * A[p][j];
        }
    }
    return true;
}

ConvexPolyhedron subdifferential_at(const Objective& f, const Vec& z) {
    if (z.size() != f.dim()) throw StructuralError("subdifferential_at: point dimension mismatch");
    switch (f.kind()) {
        case Objective::Kind::Affine:
            return ConvexPolyhedron::point(f.rows()[0]);
        case Objective::Kind::Quadratic:
            return ConvexPolyhedron::point(add(mat_vec(f.hessian(), z), f.rows()[0]));
        case Objective::Kind::MaxAffine: {
            Rational top = f.value(z);
            Mat active;
            for (std::size_t i = 0; i < f.rows().size(); ++i)
                if (dot(f.rows()[i], z) + f.offsets()[i] == top) active.push_back(f.rows()[i]);
            const std::size_t k = active.size(), n = f.dim();
            // Image of the simplex of weights under t ↦ Σ t_i g_i.
            ConvexPolyhedron simplex(k);
            for (std::size_t i = 0; i < k; ++i) simplex.add_ineq(neg(unit(k, i)), 0);
            simplex.add_eq(Vec(k, Rational(1)), 1);
            return affine_image(simplex, transpose(active, n), zeros(n), n);
        }
    }
    throw StructuralError("subdifferential_at: unknown objective kind");
}

json to_json(const Objective& f) {
    switch (f.kind()) {
        case Objective::Kind::Affine:
            return json{{"kind", "affine"}, {"c", to_json(f.rows()[0])}, {"c0", to_json(f.offsets()[0])}};
        case Objective::Kind::MaxAffine:
            return json{{"kind", "max_affine"}, {"rows", to_json(f.rows())}, {"offsets", to_json(f.offsets())}};
        case Objective::Kind::Quadratic:
            return json{{"kind", "quadratic"}, {"Q", to_json(f.hessian())}, {"c", to_json(f.rows()[0])}, {"c0", to_json(f.offsets()[0])}};
    }
    return json{};
}

Objective objective_from_json(const json& j, std::size_t n, const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "objective must be an object");
    const auto& kind = require_key(j, "kind", where);
    if (!kind.is_string()) throw ParseError(where + "/kind", "expected a string");
    const std::string k = kind.get<std::string>();
    auto vec = [&](const char* key) {
        Vec v = vector_from_json(require_key(j, key, where), where + "/" + key);
        if (v.size() != n) throw ParseError(where + "/" + key, "expected length " + std::to_string(n));
        return v;
    };
    auto scalar = [&](const char* key) { return j.contains(key) ? rational_from_json(j.at(key), where + "/" + key) : Rational(0); };
    if (k == "affine") {
        reject_unknown_keys(j, {"kind", "c", "c0"}, where);
        return Objective::affine(vec("c"), scalar("c0"));
    }
    if (k == "max_affine") {
        reject_unknown_keys(j, {"kind", "rows", "offsets"}, where);
        Mat rows = matrix_from_json(require_key(j, "rows", where), n, where + "/rows");
        Vec offs = vector_from_json(require_key(j, "offsets", where), where + "/offsets");
        if (offs.size() != rows.size()) throw ParseError(where + "/offsets", "one offset per row is required");
        return Objective::max_affine(std::move(rows), std::move(offs));
    }
    if (k == "quadratic") {
        reject_unknown_keys(j, {"kind", "Q", "c", "c0"}, where);
        Mat Q = matrix_from_json(require_key(j, "Q", where), n, where + "/Q");
        if (Q.size() != n) throw ParseError(where + "/Q", "expected " + std::to_string(n) + " rows");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < i; ++c)
                if (Q[i][c] != Q[c][i]) throw ParseError(where + "/Q", "matrix must be symmetric");
        return Objective::quadratic(std::move(Q), vec("c"), scalar("c0"));
    }
    throw ParseError(where + "/kind", "unknown objective kind '" + k + "'");
}

}  // namespace mstat::stationarity
