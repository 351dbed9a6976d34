#pragma once

#include "mstat/geometry/polyhedron.hpp"

#include <vector>

namespace mstat::geometry {

/// The hyperplane {x : a·x = b}; also read as the affine function a·x - b.
struct Hyperplane {
    Vec a;
    Rational b;
};

/// A nonempty cell of an arrangement restricted to a base polyhedron.
struct Cell {
    std::vector<int> signs;  // sign of a·x - b per hyperplane
    Vec point;               // a point of the cell
};

/// Drops constant hyperplanes and duplicates up to nonzero scaling.
std::vector<Hyperplane> normalize_hyperplanes(const std::vector<Hyperplane>& hs);

/// Closure of a cell: base ∩ {weak sign conditions}.
ConvexPolyhedron cell_closure(const ConvexPolyhedron& base, const std::vector<Hyperplane>& hs, const std::vector<int>& signs);

/// Cell point maximizing the minimum slack of its strict sign conditions (capped at 1).
std::optional<Vec> central_point(const ConvexPolyhedron& base, const std::vector<Hyperplane>& hs, const std::vector<int>& signs);

/// Nonempty sign-vector cells of `base` refined by `hs`, by incremental splitting.
/// With `central` set every cell point is the max-min-slack representative.
std::vector<Cell> arrangement_cells(const ConvexPolyhedron& base, const std::vector<Hyperplane>& hs, bool central = true);

}  // namespace mstat::geometry
