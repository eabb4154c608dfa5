#pragma once

#include "dendro/geometry.hpp"
#include "dendro/hyperspace.hpp"
#include "dendro/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dendro {

/// T(x) = 2x on [0, 1/2], 2 - 2x on [1/2, 1]. Throws std::domain_error off [0,1].
Rational tent(const Rational& x);

struct TentOrbit {
    Rational seed;
    std::uint64_t preperiod;
    std::uint64_t period;
    std::vector<Rational> cycle;  ///< starting at T^preperiod(seed)
};

/// Exact cycle detection. Throws std::runtime_error when more than `cap`
/// distinct iterates appear before the orbit repeats.
TentOrbit eventual_period(const Rational& x, std::uint64_t cap);

/// True iff T permutes F in a single cycle. Pre: F non-empty.
bool is_periodic_orbit(const std::vector<Rational>& f);

/// A finite set is an ω-limit set of T iff it is a periodic orbit.
bool is_finite_omega_limit(const std::vector<Rational>& f);

struct InteriorEmptyReport {
    std::vector<Rational> c;  ///< B ∪ {y}, sorted
    bool c_is_omega_limit;
    std::string reason;
};

/// Checks that adding y to the periodic orbit B destroys the ω-limit
/// property. Throws std::invalid_argument unless B is a periodic orbit and
/// y is a point of [0,1] outside B.
InteriorEmptyReport interior_empty_demo(const std::vector<Rational>& b, const Rational& y);

/// Every point of [0,1] within δ of one of the points.
bool is_delta_dense(std::vector<Rational> points, const Rational& delta);

struct DensitySearch {
    Rational delta{1, 32};
    std::uint64_t iterates = 10000;
    std::uint64_t seeds = 200;
    std::uint64_t rng_seed = 0;
    std::optional<std::pair<Rational, Rational>> window;  ///< seeds drawn from the open interval
};

/// A seed p/q (q a random prime in [2^20, 2^21)) whose first `iterates`
/// tent iterates, seed included, are δ-dense. Throws std::runtime_error
/// with the best gap found when every seed fails.
Rational dense_orbit_search(const DensitySearch& params);

/// The first n iterates as a net of [0,1] with resolution δ. Throws
/// std::invalid_argument if they are not δ-dense.
IntervalNet dense_orbit_net(const Rational& seed, std::uint64_t n, const Rational& delta);

/// Cycle of a rational seed as an exact net (resolution 0).
IntervalNet periodic_orbit_net(const Rational& seed, std::uint64_t cap);

/// Subinterval of [0,1] with open or closed ends.
struct Interval {
    Rational lo;
    Rational hi;
    bool lo_closed;
    bool hi_closed;

    bool contains(const Rational& x) const {
        return (lo_closed ? lo <= x : lo < x) && (hi_closed ? x <= hi : x < hi);
    }
    Interval closure() const { return {lo, hi, true, true}; }
    std::string str() const;
};

/// ⟨K_j : B meets K_j⟩ and its complement-of-closure partner, built around a
/// point p of A far from B. K_1 = [0, r_1), K_2 = (r_2, 1], with the cut
/// points in (p - δ, p) and (p, p + δ) chosen to have δ'-dense orbits.
struct SeparatorPair {
    Rational p;
    Rational delta;
    std::pair<Rational, Rational> window;
    std::vector<Rational> cut_points;
    std::vector<Interval> components;  ///< K_j
    VietorisNbhd<Interval> u_nbhd;     ///< the K_j that B meets
    VietorisNbhd<Interval> u_closure;  ///< their closures; cl 𝒰 = ⟨cl K_j⟩

    bool in_u(const IntervalNet& s) const;
    /// 𝒱 = 2^[0,1] \ cl 𝒰.
    bool in_v(const IntervalNet& s) const;
};

/// Builds the separator and checks B ∈ 𝒰, A ∈ 𝒱, and the density of the
/// cut-point orbits. Throws std::invalid_argument when A = B or no point of
/// A is more than 2δ from B.
SeparatorPair separation_construct(const IntervalNet& a, const IntervalNet& b, const Rational& delta,
                                   const DensitySearch& density);

enum class SeparationClass { in_u, in_v, margin, both, neither };

std::string to_string(SeparationClass c);

struct SeparationReport {
    std::vector<SeparationClass> classes;
    std::size_t in_u = 0;
    std::size_t in_v = 0;
    std::size_t margin = 0;
    std::size_t failures = 0;  ///< samples outside the margin in both or neither

    std::size_t outside_margin() const { return in_u + in_v + failures; }
};

/// Samples with a point within their resolution of a cut point are margin
/// cases; the rest must land in exactly one of 𝒰, 𝒱.
SeparationReport separation_verify(const SeparatorPair& sep, const std::vector<IntervalNet>& samples);

}  // namespace dendro
