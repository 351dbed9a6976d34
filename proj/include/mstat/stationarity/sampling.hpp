#pragma once

#include "mstat/stationarity/program.hpp"

#include <cstdint>

namespace mstat::stationarity {

struct StratumSample {
    std::size_t stratum = 0;
    Vec lambda;
};

/// Seeded rational points of K(z), each inside a known stratum. Points are drawn on
/// segments from a stratum representative towards other points of K(z) and kept only
/// when the sign pattern is unchanged; single-point strata yield their representative.
std::vector<StratumSample> sample_strata(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, std::size_t count, std::uint64_t seed);

}  // namespace mstat::stationarity
