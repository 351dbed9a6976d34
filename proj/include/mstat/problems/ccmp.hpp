#pragma once

#include "mstat/stationarity/verdict.hpp"

namespace mstat::problems {

using geometry::PolyUnion;
using stationarity::DerivedMaps;
using stationarity::ImplicitProgram;
using stationarity::Objective;

/// min f(z) s.t. ‖z‖₀ <= κ, z ∈ M, via complementarity multipliers.
struct CcmpInstance {
    std::size_t n = 0;
    std::size_t kappa = 0;
    Objective objective;
    std::optional<PolyUnion> base_set;  // R^n when absent
};

struct CcmpBundle {
    ImplicitProgram program;
    PolyUnion sparsity_set;  // D_κ
};

/// Throws PreconditionError unless 1 <= κ <= n-1 and n <= 4.
CcmpBundle build_ccmp(const CcmpInstance& instance);

/// I^±(z) and I^0(z).
std::vector<std::size_t> nonzero_indices(const Vec& z);
std::vector<std::size_t> zero_indices(const Vec& z);

/// {λ ∈ [0,1]^n : Σ_{I^0} λ_i >= n-κ, λ_i = 0 on I^±}; may be empty.
PolyUnion closed_form_multipliers(const CcmpInstance& instance, const Vec& z);
/// {ν : ‖ν‖₀ <= n-κ, ν_i = 0 on I^±} as a union of coordinate subspaces.
PolyUnion closed_form_normal_cone(const CcmpInstance& instance, const Vec& z);
/// 0 ∈ ∂f(z) + {ν : ν_i = 0 on I^±} + N_M(z).
bool closed_form_explicit(const CcmpInstance& instance, const Vec& z);

struct CcmpCrossCheck {
    bool normal_cone_equal = false;
    bool multipliers_equal = false;
    bool explicit_constant_over_strata = false;
    bool explicit_matches_closed_form = false;
    bool multipliers_locally_bounded = false;
    bool singleton_iff_full_support = false;
    std::size_t strata = 0;
    bool all_pass() const {
        return normal_cone_equal && multipliers_equal && explicit_constant_over_strata && explicit_matches_closed_form &&
               multipliers_locally_bounded && singleton_iff_full_support;
    }
};

CcmpCrossCheck ccmp_cross_check(const CcmpInstance& instance, const CcmpBundle& bundle, const DerivedMaps& maps, const Vec& z);

geometry::json to_json(const CcmpCrossCheck& report);

}  // namespace mstat::problems
