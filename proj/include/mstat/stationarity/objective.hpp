#pragma once

#include "mstat/geometry/json_io.hpp"
#include "mstat/geometry/polyhedron.hpp"

namespace mstat::stationarity {

using geometry::ConvexPolyhedron;

/// Objectives whose limiting subdifferential is an exact polyhedron.
class Objective {
public:
    enum class Kind { Affine, MaxAffine, Quadratic };

    Objective() = default;
    /// c·z + c0
    static Objective affine(Vec c, Rational c0 = 0);
    /// max_i (rows_i·z + offsets_i)
    static Objective max_affine(Mat rows, Vec offsets);
    /// ½ zᵀQz + c·z + c0 with Q symmetric.
    static Objective quadratic(Mat Q, Vec c, Rational c0 = 0);

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    Rational value(const Vec& z) const;
    /// Affine and max-affine are convex; a quadratic is convex iff Q is PSD.
    bool is_convex() const;

    const Mat& rows() const { return rows_; }
    const Vec& offsets() const { return offsets_; }
    const Mat& hessian() const { return Q_; }

private:
    Kind kind_ = Kind::Affine;
    std::size_t dim_ = 0;
    Mat rows_;  // gradients of the affine pieces (one row for affine and quadratic linear part)
    Vec offsets_;
    Mat Q_;
};

/// Exact positive semidefiniteness of a symmetric matrix by symmetric pivoting.
bool is_psd(const Mat& Q);

/// Limiting subdifferential: {c}, {Qz + c}, or the hull of the active gradients.
ConvexPolyhedron subdifferential_at(const Objective& f, const Vec& z);

geometry::json to_json(const Objective& f);
Objective objective_from_json(const geometry::json& j, std::size_t n, const std::string& where);

}  // namespace mstat::stationarity
