#pragma once

#include "mstat/core/rational.hpp"
#include "mstat/geometry/lp.hpp"

#include <optional>
#include <vector>

namespace mstat::geometry {

/// {x in R^dim : A x <= b, E x = d}.
struct ConvexPolyhedron {
    std::size_t dim = 0;
    Mat A;
    Vec b;
    Mat E;
    Vec d;

    ConvexPolyhedron() = default;
    explicit ConvexPolyhedron(std::size_t dim_) : dim(dim_) {}
    ConvexPolyhedron(std::size_t dim_, Mat A_, Vec b_, Mat E_ = {}, Vec d_ = {});

    static ConvexPolyhedron universe(std::size_t dim);
    static ConvexPolyhedron point(const Vec& x);
    /// Canonical empty polyhedron {x : 0 <= -1}.
    static ConvexPolyhedron empty(std::size_t dim);

    void add_ineq(Vec a, Rational rhs);
    void add_eq(Vec a, Rational rhs);

    /// Throws StructuralError when row lengths disagree with dim.
    void validate() const;
    bool contains(const Vec& x) const;
    /// b = 0 and d = 0.
    bool is_homogeneous() const;
};

struct Feasibility {
    bool feasible = false;
    std::optional<Vec> witness;
};

Feasibility lp_feasible(const ConvexPolyhedron& P);
bool is_empty(const ConvexPolyhedron& P);
LpResult maximize(const ConvexPolyhedron& P, const Vec& c);

/// Exact Fourier–Motzkin projection eliminating `coords`; the remaining coordinates keep their order.
ConvexPolyhedron project_out(const ConvexPolyhedron& P, const std::vector<std::size_t>& coords);
/// Keeps only `coords` (in the given order), eliminating the rest.
ConvexPolyhedron project_onto(const ConvexPolyhedron& P, const std::vector<std::size_t>& coords);

/// Normalizes rows, merges opposite inequalities into equalities and drops LP-redundant rows.
ConvexPolyhedron simplify(const ConvexPolyhedron& P);

ConvexPolyhedron intersect(const ConvexPolyhedron& P, const ConvexPolyhedron& Q);
/// Cartesian product P x Q.
ConvexPolyhedron product(const ConvexPolyhedron& P, const ConvexPolyhedron& Q);
/// {x in R^cols : T x + t in P}, T has P.dim rows.
ConvexPolyhedron affine_preimage(const ConvexPolyhedron& P, const Mat& T, const Vec& t, std::size_t cols);
/// {T x + t : x in P}, T has `rows` rows and P.dim columns.
ConvexPolyhedron affine_image(const ConvexPolyhedron& P, const Mat& T, const Vec& t, std::size_t rows);
/// Places P's coordinates at positions `where` of a larger space of dimension dim (others free).
ConvexPolyhedron embed(const ConvexPolyhedron& P, std::size_t dim, const std::vector<std::size_t>& where);
/// Fixes the coordinates `coords` to `values` and removes them.
ConvexPolyhedron fix_coordinates(const ConvexPolyhedron& P, const std::vector<std::size_t>& coords, const Vec& values);

/// inner ⊆ outer, decided with one LP per row of outer.
bool contains(const ConvexPolyhedron& outer, const ConvexPolyhedron& inner);
bool equal_sets(const ConvexPolyhedron& P, const ConvexPolyhedron& Q);
/// Every point of P has zero coordinates at `coords` (all coordinates when empty list).
bool vanishes_on(const ConvexPolyhedron& P, const std::vector<std::size_t>& coords);
/// A point of P with a nonzero coordinate among `coords`, if one exists.
std::optional<Vec> nonzero_point(const ConvexPolyhedron& P, const std::vector<std::size_t>& coords);
bool is_bounded(const ConvexPolyhedron& P);
/// Recession cone {d : A d <= 0, E d = 0}.
ConvexPolyhedron recession_cone(const ConvexPolyhedron& P);
/// A point in the relative interior (maximizes the minimum slack of non-implicit inequalities).
std::optional<Vec> relative_interior_point(const ConvexPolyhedron& P);

/// Finite union of nonempty convex polyhedra of equal dimension.
class PolyUnion {
public:
    PolyUnion() = default;
    /// Drops empty pieces; throws PreconditionError when nothing is left.
    PolyUnion(std::size_t dim, std::vector<ConvexPolyhedron> pieces);
    explicit PolyUnion(ConvexPolyhedron piece);

    /// The distinguished empty set (legal only as a query result).
    static PolyUnion empty_set(std::size_t dim);
    /// Like the constructor, but an all-empty input yields empty_set.
    static PolyUnion from_pieces(std::size_t dim, std::vector<ConvexPolyhedron> pieces);

    std::size_t dim() const { return dim_; }
    const std::vector<ConvexPolyhedron>& pieces() const { return pieces_; }
    bool is_empty() const { return pieces_.empty(); }
    bool contains(const Vec& x) const;
    std::size_t size() const { return pieces_.size(); }

private:
    std::size_t dim_ = 0;
    std::vector<ConvexPolyhedron> pieces_;
};

using PolyCone = ConvexPolyhedron;
using ConeUnion = PolyUnion;

bool membership(const PolyUnion& U, const Vec& x);

/// Removes duplicate pieces and pieces contained in another piece.
PolyUnion prune(const PolyUnion& U);
PolyUnion intersect(const PolyUnion& L, const PolyUnion& R);
PolyUnion product(const PolyUnion& L, const PolyUnion& R);
PolyUnion unite(const PolyUnion& L, const PolyUnion& R);
PolyUnion project_out(const PolyUnion& U, const std::vector<std::size_t>& coords);
PolyUnion affine_preimage(const PolyUnion& U, const Mat& T, const Vec& t, std::size_t cols);
PolyUnion affine_image(const PolyUnion& U, const Mat& T, const Vec& t, std::size_t rows);
PolyUnion fix_coordinates(const PolyUnion& U, const std::vector<std::size_t>& coords, const Vec& values);

/// Coordinate permutation matrix helper: rows select input coordinates.
Mat selection_matrix(const std::vector<std::size_t>& coords, std::size_t cols);

}  // namespace mstat::geometry
