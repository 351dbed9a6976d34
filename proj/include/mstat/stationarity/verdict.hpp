#pragma once

#include "mstat/stationarity/program.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mstat::stationarity {

enum class StationarityKind { Implicit, Fuzzy, Explicit };
enum class CqKind { MordukhovichI, MordukhovichII, MordukhovichIII, AbstractCq, MrCq, StrongCq, IncLambda, Sigma };

std::string to_string(StationarityKind k);
std::string to_string(CqKind k);
std::optional<StationarityKind> parse_stationarity_kind(const std::string& s);
std::optional<CqKind> parse_cq_kind(const std::string& s);
/// CQ kinds that depend on a choice of λ ∈ K(z).
bool cq_needs_lambda(CqKind k);

/// Exact multipliers of a satisfied stationarity system.
/// Implicit: xi ∈ D*H(z,0)(nu). Fuzzy: (xi_z, xi_λ) ∈ D*joint((z,λ),(0,0))(mu, nu).
/// Explicit: xi = (xi_F, xi_G) with xi_F ∈ D*F(z,λ)(mu), (xi_G, mu) ∈ D*G((z,λ),0)(nu).
struct Witness {
    Vec lambda, mu, nu, xi;
    Vec subgradient;  // element of ∂f(z)
    Vec base_normal;  // element of N_M(z)
};

struct Verdict {
    std::string kind;
    bool holds = false;
    std::optional<Witness> witness;
    std::optional<std::size_t> stratum;
    std::vector<std::string> certificates;
    std::optional<Vec> violation;  // nonzero element refuting a qualification condition
};

/// Per-stratum verdicts together with the existential and universal aggregates.
struct StrataVerdict {
    std::string kind;
    std::vector<StratumRep> strata;
    std::vector<Verdict> per_stratum;
    bool exists = false;  // holds for some stratum
    bool forall = false;  // holds for every stratum
};

/// Decides one stationarity system at a feasible z. Fuzzy and explicit need λ ∈ K(z).
Verdict check_stationarity(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, StationarityKind kind,
                           const std::optional<Vec>& lambda = std::nullopt);
/// Fuzzy or explicit over all stratum representatives of K(z).
StrataVerdict check_stationarity_strata(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, StationarityKind kind);

/// Substitutes the witness back into the defining inclusion, recomputing every cone.
bool verify_witness(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, StationarityKind kind, const Witness& w);

/// Decides a qualification condition; λ is required by the kinds flagged in cq_needs_lambda.
Verdict check_cq(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, CqKind kind, const std::optional<Vec>& lambda = std::nullopt);

/// Sufficiency under convexity: any satisfied system certifies a global minimizer.
Verdict convex_sufficiency(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z);

/// M-stationarity of the explicit-variable problem at (z, λ) computed from the coderivative of joint_with_m.
Verdict explicit_problem_stationarity(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, const Vec& lambda);

geometry::json to_json(const Verdict& v);
geometry::json to_json(const StrataVerdict& v);
Verdict verdict_from_json(const geometry::json& j, const std::string& where);

}  // namespace mstat::stationarity
