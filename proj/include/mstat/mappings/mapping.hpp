#pragma once

#include "mstat/geometry/arrangement.hpp"
#include "mstat/geometry/cones.hpp"
#include "mstat/geometry/json_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mstat::mappings {

using geometry::ConeUnion;
using geometry::ConvexPolyhedron;
using geometry::PolyUnion;

/// Set-valued map R^n_in ⇒ R^n_out given by its graph (input coordinates first).
/// Polyhedral graphs make the map metrically subregular at every graph point.
class PolyMapping {
public:
    PolyMapping() = default;
    PolyMapping(std::size_t n_in, std::size_t n_out, PolyUnion graph);

    std::size_t n_in() const { return n_in_; }
    std::size_t n_out() const { return n_out_; }
    const PolyUnion& graph() const { return graph_; }
    bool in_graph(const Vec& z, const Vec& w) const;

private:
    std::size_t n_in_ = 0;
    std::size_t n_out_ = 0;
    PolyUnion graph_;
};

/// {w : (z,w) in gph}; the distinguished empty set when z is outside the domain.
PolyUnion image_at(const PolyMapping& map, const Vec& z);
/// dom as a union of polyhedra (projection of the graph).
PolyUnion domain(const PolyMapping& map);
PolyMapping inverse(const PolyMapping& map);

/// The full coderivative D*map(z,w) as a mapping η ⇒ ξ whose graph is a cone union.
PolyMapping coderivative(const PolyMapping& map, const Vec& z, const Vec& w);
/// {ξ : (ξ,-η) in N_gph(z,w)}.
PolyUnion coderivative_at(const PolyMapping& map, const Vec& z, const Vec& w, const Vec& eta);

enum class Criterion { Aubin, MetricRegularity };
/// Aubin: D*(0) = {0}; metric regularity: ker D* = {0}.
bool criterion_check(const PolyMapping& map, const Vec& z, const Vec& w, Criterion kind);
/// Same criteria evaluated on an already computed coderivative mapping.
bool criterion_check(const PolyMapping& coderiv, Criterion kind);

/// Sufficient test: every graph piece meeting {z} x R^out has no recession direction (0, dw ≠ 0).
bool locally_bounded_at(const PolyMapping& map, const Vec& z);

struct Composition {
    PolyMapping composed;      // z ⇒ S2(S1(z))
    PolyMapping intermediate;  // (z,w) ⇒ S1(z) ∩ S2^{-1}(w)
};
Composition compose(const PolyMapping& s1, const PolyMapping& s2);

struct ChainRuleReport {
    bool intermediate_locally_bounded = false;  // inner semicompactness certificate for the intermediate map
    bool inclusion = false;                      // D*(S2∘S1)(z,w) ⊆ union over y of D*S1(z,y)∘D*S2(y,w)
    std::size_t intermediate_strata = 0;
    std::optional<Vec> counterexample;  // (w*, z*) on the left but not the right
    std::vector<std::string> certificates;
};
/// Both sides of the chain rule computed independently and compared exactly.
/// The union over y runs over stratum representatives of S1(z) ∩ S2^{-1}(w).
ChainRuleReport chain_rule_check(const PolyMapping& s1, const PolyMapping& s2, const Vec& z, const Vec& w);

/// z ⇒ Γ1(z) x Γ2(z).
PolyMapping product(const PolyMapping& g1, const PolyMapping& g2);

struct ProductReport {
    bool qualification = false;       // D*Γ1(0) ∩ (-D*Γ2(0)) = {0}
    bool factors_polyhedral = true;   // always, so the product-rule estimate is certified
    bool estimate_inclusion = false;  // gph D*Γ ⊆ {(ξ1,ξ2,x1+x2)} checked exactly
    std::vector<std::string> certificates;
};
ProductReport product_report(const PolyMapping& g1, const PolyMapping& g2, const Vec& z, const Vec& w1, const Vec& w2);

struct SigmaReport {
    bool range_condition = false;  // rge D*Γ1 ∩ (-rge D*Γ2) = {0}
    bool factors_polyhedral = true;
    bool product_subregular = true;
    std::vector<std::string> certificates;
};
SigmaReport sigma_subregularity_check(const PolyMapping& g1, const PolyMapping& g2, const Vec& z, const Vec& w1,
                                      const Vec& w2);

/// Range {ξ : ∃η, (η,ξ) in gph} of a coderivative mapping.
PolyUnion coderivative_range(const PolyMapping& coderiv);

// ---------------------------------------------------------------- builders

/// z ↦ C z + c (single valued).
PolyMapping affine_map(const Mat& C, const Vec& c, std::size_t n_in);
/// z ⇒ C z + c − Ω.
PolyMapping shifted_set(const Mat& C, const Vec& c, const PolyUnion& omega, std::size_t n_in);
/// z ⇒ S (constant).
PolyMapping constant_map(std::size_t n_in, const PolyUnion& S);

/// Hyperplanes of all graph rows restricted to {z} x R^out: affine functions of w.
std::vector<geometry::Hyperplane> slice_hyperplanes(const PolyMapping& map, const Vec& z);

/// Stratum representatives of a set Y ⊆ R^k refined by the hyperplanes hs.
std::vector<geometry::Cell> set_strata(const PolyUnion& Y, const std::vector<geometry::Hyperplane>& hs);

geometry::json to_json(const PolyMapping& map);
PolyMapping mapping_from_json(const geometry::json& j, const std::string& where);

}  // namespace mstat::mappings
