#pragma once

#include "mstat/geometry/arrangement.hpp"
#include "mstat/geometry/polyhedron.hpp"

#include <optional>

namespace mstat::geometry {

/// Union over pieces containing x of {dir : A_active dir <= 0, E dir = 0}.
ConeUnion tangent_cone(const PolyUnion& U, const Vec& x);

/// Polar of a convex polyhedral cone, {y : y·d <= 0 for all d in C}.
PolyCone polar_cone(const PolyCone& C);
/// Polar of a union: the intersection of the piece polars.
PolyCone polar_cone(const ConeUnion& C);

PolyCone regular_normal_cone(const PolyUnion& U, const Vec& x);

/// Limiting normal cone via stratification of the local arrangement at x.
ConeUnion limiting_normal_cone(const PolyUnion& U, const Vec& x);

struct Containment {
    bool holds = false;
    std::optional<Vec> witness;  // point of L outside R when !holds
};

/// Decides ⋃L ⊆ ⋃R exactly by refining L's pieces along R's hyperplanes.
Containment contains_union(const PolyUnion& L, const PolyUnion& R);
bool equal_unions(const PolyUnion& L, const PolyUnion& R);

PolyUnion minkowski_sum(const PolyUnion& L, const PolyUnion& R);
ConvexPolyhedron minkowski_sum(const ConvexPolyhedron& P, const ConvexPolyhedron& Q);

/// Every piece is {0}.
bool is_trivial_cone(const ConeUnion& C);

}  // namespace mstat::geometry
