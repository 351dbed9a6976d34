#pragma once

#include "mstat/mappings/mapping.hpp"
#include "mstat/stationarity/objective.hpp"

#include <optional>

namespace mstat::stationarity {

using geometry::PolyUnion;
using mappings::PolyMapping;

/// min f(z) s.t. 0 ∈ ⋃_{λ ∈ F(z)} G(z, λ), z ∈ M.
struct ImplicitProgram {
    std::size_t n = 0, m = 0, s = 0;
    Objective objective;
    PolyMapping lambda_map;    // F : R^n ⇒ R^m
    PolyMapping residual_map;  // G : R^{n+m} ⇒ R^s
    PolyUnion base_set;        // M ⊆ R^n
    /// Optional aggregate with the same zero set as the composition, used for the implicit system.
    std::optional<PolyMapping> implicit_aggregate;

    void validate() const;
};

/// All auxiliary mappings built from the program data.
struct DerivedMaps {
    PolyMapping aggregate;               // H(z) = ⋃_{λ ∈ F(z)} G(z, λ)
    PolyMapping aggregate_with_m;        // H(z) x (z - M)
    PolyMapping joint;                   // (z,λ) ⇒ (F(z) - λ, G(z,λ))
    PolyMapping joint_with_m;            // joint x (z - M)
    PolyMapping graph_residual_with_m;   // (z,λ) ⇒ ((z,λ) - gph F, (z,λ,0) - gph G, z - M)
    PolyMapping joint_shifted;           // (z,w,λ) ⇒ (F(z) - λ, G(z,λ) - w)
    PolyMapping intermediate;            // K(z) = {λ ∈ F(z) : 0 ∈ G(z,λ)}
    PolyMapping intermediate_perturbed;  // K̂(z,w) = {λ ∈ F(z) : w ∈ G(z,λ)}
    PolyMapping implicit_aggregate;      // the override if present, else the aggregate
};

DerivedMaps build_derived(const ImplicitProgram& program);

/// z ∈ M and K(z) ≠ ∅.
bool is_feasible(const ImplicitProgram& program, const DerivedMaps& maps, const Vec& z);
/// Throws PreconditionError with an explanation when z is not feasible.
void require_feasible(const ImplicitProgram& program, const DerivedMaps& maps, const Vec& z);

struct StratumRep {
    std::size_t id = 0;
    std::vector<int> signs;
    Vec lambda;
};
/// One relative-interior point per stratum of K(z) refined by the gph F and gph G rows at z.
std::vector<StratumRep> k_stratum_representatives(const ImplicitProgram& program, const DerivedMaps& maps, const Vec& z);
/// Stratum id of an arbitrary λ ∈ K(z) (matching signs), or nullopt when λ ∉ K(z).
std::optional<std::size_t> stratum_of(const ImplicitProgram& program, const DerivedMaps& maps, const Vec& z, const Vec& lambda);

/// Every piece of gph F, gph G and M single and the objective convex.
bool is_convex_program(const ImplicitProgram& program);

geometry::json to_json(const ImplicitProgram& program);
ImplicitProgram program_from_json(const geometry::json& j, const std::string& where);

}  // namespace mstat::stationarity
