#include "properties.hpp"

#include <doctest.h>

using namespace testsupport;

namespace {

void require_clean(const PropertyResult& r, std::size_t min_checked) {
    CAPTURE(r.name);
    CAPTURE(r.first_failure);
    CHECK(r.checked >= min_checked);
    CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("polar cones are bidual") { require_clean(polar_biduality(kPropertySeed), 60); }

TEST_CASE("projection membership agrees with slice feasibility") { require_clean(projection_membership(kPropertySeed, 1000), 1000); }

TEST_CASE("sampled nearby regular normals lie in the limiting cone") { require_clean(stratification_soundness(kPropertySeed), 200); }

TEST_CASE("witnesses of holding verdicts re-verify") { require_clean(witness_reverification(), 10); }

TEST_CASE("stratum representatives decide sampled multipliers") { require_clean(strata_sufficiency(kPropertySeed, 100), 100); }

TEST_CASE("sampling is reproducible from the seed") {
    auto p = mstat::problems::build_ccmp({2, 1, st::Objective::affine(V({1, 1})), std::nullopt}).program;
    auto d = st::build_derived(p);
    auto a = st::sample_strata(p, d, V({0, 0}), 20, 5);
    auto b = st::sample_strata(p, d, V({0, 0}), 20, 5);
    REQUIRE(a.size() == 20);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].lambda == b[i].lambda);
    std::size_t moved = 0;
    auto reps = st::k_stratum_representatives(p, d, V({0, 0}));
    for (const auto& s : a)
        for (const auto& rep : reps)
            if (rep.id == s.stratum && rep.lambda != s.lambda) ++moved;
    CHECK(moved > 0);
}
