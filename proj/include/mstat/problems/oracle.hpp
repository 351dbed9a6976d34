#pragma once

#include "mstat/problems/examples.hpp"
#include "mstat/stationarity/program.hpp"

#include <functional>

namespace mstat::problems {

struct GridConfig {
    /// [lo, hi] per coordinate of (z, λ); the first n entries also bound the (P) grid.
    std::vector<std::pair<Rational, Rational>> box;
    Rational step{1, 100};
    std::size_t radius = 2;
};

/// Exact feasibility and objective callables the oracle enumerates.
struct GridModel {
    std::size_t n = 0, m = 0;
    std::function<Rational(const Vec&)> objective;
    std::function<bool(const Vec&)> p_feasible;
    /// For a (P)-feasible z, the membership test λ ∈ K(z).
    std::function<std::function<bool(const Vec&)>(const Vec&)> multipliers;
    std::function<std::optional<bool>(const Vec&)> k_locally_bounded;
};

GridModel grid_model(const stationarity::ImplicitProgram& program, const stationarity::DerivedMaps& maps);
GridModel grid_model(const OracleOnlyProgram& program);

struct GridRow {
    Vec point;
    bool feasible = false;
    bool local_min = false;
    bool global_min = false;
};

struct GridCounterexample {
    Vec z, lambda;
    bool all_grid_multipliers_local = false;
    std::optional<bool> k_locally_bounded;
};

struct RelationReport {
    bool has_data = false;
    std::vector<GridRow> p_rows;  // every (P) grid point
    std::vector<GridRow> q_rows;  // feasible (Q) grid points
    std::vector<Vec> p_local, p_global;
    std::vector<Vec> q_local, q_global;
    bool global_correspondence = false;
    /// (z, λ) with z grid-local for (P) but (z, λ) not grid-local for (Q).
    std::vector<std::pair<Vec, Vec>> local_direction_violations;
    /// (z, λ) grid-local for (Q) while z is not grid-local for (P).
    std::vector<GridCounterexample> counterexamples;

    bool p_is_local(const Vec& z) const;
    bool p_is_global(const Vec& z) const;
    bool q_is_local(const Vec& z, const Vec& lambda) const;
    bool q_is_feasible(const Vec& z, const Vec& lambda) const;
};

/// Throws PreconditionError for a malformed grid and ResourceLimitError for an oversized one.
RelationReport oracle_relate(const GridModel& model, const GridConfig& config);

geometry::json to_json(const RelationReport& report);

}  // namespace mstat::problems
