#include "mstat/stationarity/sampling.hpp"

#include <random>

namespace mstat::stationarity {

namespace {

Rational random_fraction(std::mt19937_64& rng, long den) {
    std::uniform_int_distribution<long> dist(1, den - 1);
    return Rational(dist(rng), den);
}

}  // namespace

std::vector<StratumSample> sample_strata(const ImplicitProgram& p, const DerivedMaps& d, const Vec& z, std::size_t count, std::uint64_t seed) {
    std::vector<StratumSample> out;
    auto reps = k_stratum_representatives(p, d, z);
    if (reps.empty()) return out;
    const auto K = mappings::image_at(d.intermediate, z);
    std::mt19937_64 rng(seed);

    std::vector<Vec> targets;
    for (const auto& r : reps) targets.push_back(r.lambda);
    std::uniform_int_distribution<long> coord(-32, 32);
    for (int tries = 0; tries < 200 && targets.size() < reps.size() + 8; ++tries) {
        Vec q = reps[tries % reps.size()].lambda;
        for (auto& x : q) x += Rational(coord(rng), 16);
        if (K.contains(q)) targets.push_back(std::move(q));
    }

    // Per stratum: targets whose segment from the representative starts inside the stratum,
    // with the longest verified step. Strata are relatively open and convex, so every shorter
    // step along the same segment stays inside.
    struct Direction {
        const Vec* target;
        Rational reach;
    };
    std::vector<std::vector<Direction>> directions(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto& r = reps[i];
        for (const auto& q : targets) {
            if (q == r.lambda) continue;
            auto inside = [&](const Rational& t) { return stratum_of(p, d, z, add(r.lambda, scale(t, sub(q, r.lambda)))) == r.id; };
            Rational t(1, 64);
            if (!inside(t)) continue;
            while (t < Rational(1, 2) && inside(t * 2)) t *= 2;
            directions[i].push_back({&q, t});
        }
    }

    std::uniform_int_distribution<std::size_t> pick_rep(0, reps.size() - 1);
    while (out.size() < count) {
        const std::size_t i = pick_rep(rng);
        const auto& r = reps[i];
        StratumSample s{r.id, r.lambda};
        if (!directions[i].empty()) {
            std::uniform_int_distribution<std::size_t> pick_dir(0, directions[i].size() - 1);
            const auto& dir = directions[i][pick_dir(rng)];
            s.lambda = add(r.lambda, scale(dir.reach * random_fraction(rng, 64), sub(*dir.target, r.lambda)));
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace mstat::stationarity
