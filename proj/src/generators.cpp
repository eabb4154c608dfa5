#include "dendro/generators.hpp"

namespace dendro::gen {

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

Rational unit_rational(Rng& rng, std::uint64_t max_den) {
    const auto q = uniform(rng, 1, max_den);
    const auto p = uniform(rng, 0, q);
    return Rational(static_cast<long>(p), static_cast<long>(q));
}

Dyadic dyadic(Rng& rng, unsigned max_level) {
    const auto level = static_cast<unsigned>(uniform(rng, 1, max_level));
    const auto half = std::uint64_t{1} << (level - 1);
    return Dyadic(2 * uniform(rng, 0, half - 1) + 1, level);
}

Itinerary finite_itinerary(Rng& rng, const ItineraryShape& shape) {
    if (uniform(rng, 0, 49) == 0) {
        return Itinerary::origin();
    }
    const auto depth = uniform(rng, 1, shape.max_depth);
    std::vector<Step> steps;
    for (std::uint64_t i = 1; i < depth; ++i) {
        steps.push_back({uniform(rng, 0, shape.max_branch), dyadic(rng, shape.max_level)});
    }
    Rational t = unit_rational(rng, shape.max_den);
    if (t.is_zero()) t = Rational(1);
    return Itinerary::finite(std::move(steps), uniform(rng, 0, shape.max_branch), t);
}

Cylinder cylinder(Rng& rng, std::size_t max_prefix, Branch max_branch, unsigned max_level) {
    std::vector<Step> prefix;
    const auto depth = uniform(rng, 0, max_prefix);
    for (std::uint64_t i = 0; i < depth; ++i) {
        prefix.push_back({uniform(rng, 0, max_branch), dyadic(rng, max_level)});
    }
    Rational lo = unit_rational(rng, 16);
    Rational hi = unit_rational(rng, 16);
    while (lo == hi) hi = unit_rational(rng, 16);
    if (hi < lo) std::swap(lo, hi);
    return Cylinder(std::move(prefix), uniform(rng, 0, max_branch), lo, hi);
}

Subset subset(Rng& rng, std::size_t n) {
    return Subset(static_cast<std::uint32_t>(uniform(rng, 1, (std::uint64_t{1} << n) - 1)));
}

}  // namespace dendro::gen
