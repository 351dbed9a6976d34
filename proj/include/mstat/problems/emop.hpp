#pragma once

#include "mstat/stationarity/program.hpp"

namespace mstat::problems {

/// Weak efficiency of z for min Jz over Γ = {z : Az <= b}, as the program
/// F(z) ≡ Δ, G(z,λ) = Ψ(λ) - z with Ψ(λ) = argmin_{u ∈ Γ} λᵀJu.
/// Throws PreconditionError for fewer than two objectives or unbounded Γ.
stationarity::ImplicitProgram build_emop_linear(const Mat& J, const geometry::ConvexPolyhedron& feasible);

/// gph Ψ ⊆ R^{m+n} over (λ, u), via the KKT patterns of the scalarized LP.
geometry::PolyUnion scalarized_solution_graph(const Mat& J, const geometry::ConvexPolyhedron& feasible);

}  // namespace mstat::problems
