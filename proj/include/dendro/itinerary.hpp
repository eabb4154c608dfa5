#pragma once

#include "dendro/dyadics.hpp"
#include "dendro/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dendro {

using Branch = std::uint64_t;

/// One star crossing: travel along beam `branch` to the dyadic point
/// `dyadic`, then enter the star centred there.
struct Step {
    Branch branch;
    Dyadic dyadic;

    friend bool operator==(const Step&, const Step&) = default;
    friend auto operator<=>(const Step& a, const Step& b) {
        if (auto c = a.branch <=> b.branch; c != 0) return c;
        return a.dyadic <=> b.dyadic;
    }
};

/// Stateless generator of the tail (b_k, b_{k+1}, ...) of the listing of
/// dyadics in [0, r], starting at index `next_index`.
struct GammaTail {
    Rational r;
    std::uint64_t next_index;

    Dyadic dyadic_at(std::uint64_t offset) const { return gamma_cap_kth(r, next_index + offset); }

    friend bool operator==(const GammaTail&, const GammaTail&) = default;
    friend std::strong_ordering operator<=>(const GammaTail& a, const GammaTail& b) {
        if (auto c = a.r <=> b.r; c != 0) return c;
        return a.next_index <=> b.next_index;
    }
};

/// Symbolic address of a point of the universal dendrite.
///
///  - origin: the common centre 0, written "(0)".
///  - finite: (n1, a1, ..., nk, r), a point at parameter r in (0,1] on beam
///    nk of the star reached through the steps.
///  - lazy:   (n1, a1, ..., nk, b_j, 0, b_{j+1}, 0, b_{j+2}, ...), written
///    "(n1,a1,...,nk,*gamma[r,j])". Only the zero-interleaved tails of
///    the listing of [0, r] are representable; those are the points whose
///    orbits realise the scaled base stars D_r.
///
/// Lazy itineraries are kept canonical: a trailing step (n, b_{j-1}) in
/// front of a terminal branch 0 is folded back into the tail.
class Itinerary {
public:
    enum class Kind { origin, finite, lazy };

    static Itinerary origin() { return Itinerary(); }
    static Itinerary finite(std::vector<Step> steps, Branch terminal_branch, Rational param);
    static Itinerary lazy(std::vector<Step> steps, Branch terminal_branch, GammaTail tail);

    /// Parses the text syntax; throws ParseError on malformed input.
    static Itinerary parse(std::string_view text);

    Kind kind() const { return kind_; }
    bool is_origin() const { return kind_ == Kind::origin; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_lazy() const { return kind_ == Kind::lazy; }

    const std::vector<Step>& steps() const { return steps_; }
    Branch terminal_branch() const { return terminal_; }
    /// Beam parameter of a finite itinerary.
    const Rational& param() const;
    const GammaTail& tail() const;

    std::string str() const;

    friend bool operator==(const Itinerary&, const Itinerary&) = default;
    friend std::strong_ordering operator<=>(const Itinerary& a, const Itinerary& b);

private:
    Itinerary() = default;

    Kind kind_ = Kind::origin;
    std::vector<Step> steps_;
    Branch terminal_ = 0;
    Rational param_;
    GammaTail tail_{Rational(0), 0};
};

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::invalid_argument(message + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// The i-th beam crossing of a point (0-based). `star` is set when the
/// itinerary continues into the star centred at `position`.
struct Level {
    Branch branch;
    Rational position;
    std::optional<Dyadic> star;
};

/// Number of beam crossings: 0 for the origin, steps + 1 for finite
/// itineraries, unbounded for lazy ones.
std::size_t level_count(const Itinerary& it);
inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

/// Pre: i < level_count(it). Lazy tails are materialised on demand.
Level level_at(const Itinerary& it, std::size_t i);

/// One application of the dendrite map.
Itinerary apply_f(const Itinerary& it);

/// n-fold application; runs of the decrement rule are taken in one stride.
Itinerary iterate_f(const Itinerary& it, std::uint64_t n);

/// Least N with f^N(it) = origin. Throws std::invalid_argument for lazy
/// itineraries, whose orbits never reach the origin.
std::uint64_t time_to_origin(const Itinerary& it);

/// sum over crossings of (branch + level + 1); the exact hitting time of the
/// origin for finite itineraries (the terminal crossing has level 0).
std::uint64_t time_to_origin_bound(const Itinerary& it);

/// The point (0, b_1, 0, b_2, 0, b_3, ...) built from the dyadics in [0, r].
Itinerary special_point(const Rational& r);

/// Times m_2 < ... < m_K at which the orbit of special_point(r) sits at
/// (0, b_k, 0, b_{k+1}, ...). Found by forward iteration.
std::vector<std::uint64_t> return_times(const Rational& r, std::uint64_t count);

}  // namespace dendro
