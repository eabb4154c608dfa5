#pragma once

#include "dendro/dynamics.hpp"
#include "dendro/hyperspace.hpp"
#include "dendro/itinerary.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace dendro::gen {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi);

/// p/q with 1 <= q <= max_den and 0 <= p <= q (so in [0,1]).
Rational unit_rational(Rng& rng, std::uint64_t max_den);

/// Dyadic of level 1..max_level.
Dyadic dyadic(Rng& rng, unsigned max_level);

struct ItineraryShape {
    std::size_t max_depth = 5;  ///< crossings, terminal included
    Branch max_branch = 20;
    unsigned max_level = 6;
    std::uint64_t max_den = 64;  ///< terminal parameter denominators
};

/// Finite itinerary, or the origin with small probability.
Itinerary finite_itinerary(Rng& rng, const ItineraryShape& shape);

/// Random cylinder with up to `max_prefix` steps.
Cylinder cylinder(Rng& rng, std::size_t max_prefix, Branch max_branch, unsigned max_level);

/// Non-empty subset of the first n points.
Subset subset(Rng& rng, std::size_t n);

}  // namespace dendro::gen
