#pragma once

#include "dendro/itinerary.hpp"
#include "dendro/rational.hpp"

#include <string_view>

namespace dendro::testing {

inline Rational Q(std::string_view text) { return Rational::parse(text); }
inline Itinerary I(std::string_view text) { return Itinerary::parse(text); }

}  // namespace dendro::testing
