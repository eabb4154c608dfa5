#pragma once

#include "dendro/itinerary.hpp"
#include "dendro/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace dendro {

/// Lengths of the concrete realisation.
///
/// Base beams: L_0 = L_1 = 1 and L_j = 2^(1-j) for j >= 2. A star centred at a
/// level-l dyadic of a beam of length Λ has scale Λ 2^-(l+2), and its beam m
/// has length scale * L_m. Every length is therefore a power of two.
namespace scheme {

Rational base_length(Branch j);
Rational star_scale(unsigned level, const Rational& carrier_length);

}  // namespace scheme

/// Length of beam `terminal_branch` of the star reached through `prefix`.
Rational beam_length(std::span<const Step> prefix, Branch terminal_branch);

/// Upper bound 4 * beam_length on the diameter of the set of points whose
/// itinerary runs through that beam. Every such point also lies within
/// beam_length of the beam's base (the subtree height equals the length).
Rational subtree_diameter_bound(std::span<const Step> prefix, Branch terminal_branch);

struct Truncation {
    Itinerary point;  ///< origin or finite
    Rational error;   ///< intrinsic distance bound to the original point
};

/// Replaces a lazy itinerary by the star centre at which the remaining
/// subtree's diameter bound drops below `tol`. Finite input is returned
/// unchanged with error 0.
Truncation truncate(const Itinerary& it, const Rational& tol);

/// Arc length from the origin to a finite itinerary.
Rational distance_from_origin(const Itinerary& it);

/// Tree-geodesic distance. Exact for finite arguments; lazy arguments are
/// truncated so that the result is within `tol` of the true distance.
Rational intrinsic_distance(const Itinerary& a, const Itinerary& b, const Rational& tol);

/// Intrinsic metric with a truncation tolerance for lazy points.
struct IntrinsicMetric {
    Rational tail_tol;
    Rational operator()(const Itinerary& a, const Itinerary& b) const {
        return intrinsic_distance(a, b, tail_tol);
    }
};

/// Finite ε-net standing in for a compact set: every point of the target
/// lies within `resolution` of some listed point.
template <class Point>
struct CompactApprox {
    std::string label;
    std::vector<Point> points;
    Rational resolution;
};

using DendriteNet = CompactApprox<Itinerary>;
using IntervalNet = CompactApprox<Rational>;

struct TruncationParams {
    unsigned depth = 1;         ///< beam crossings; 1 = base star only
    Branch branch_cutoff = 1;   ///< beams 0..J in every star
    unsigned level_cutoff = 0;  ///< stars only at dyadics of level <= Lmax
};

/// Net of the stage-d dendrite D_d. Samples every beam inside the truncation
/// at spacing <= eps and certifies resolution eps + (largest subtree height
/// among discarded beams and stars). Throws std::invalid_argument when the
/// certified resolution exceeds 1; eps >= 2 yields {origin} with resolution 1.
DendriteNet build_net_D_truncated(const TruncationParams& params, const Rational& eps);

/// Net of D_r = union over j of [0, u_j], u_j ~ (j, r). Beams 0..J are
/// sampled at spacing <= eps on a grid independent of r (so nets for
/// different r are nested) and always include u_j. Resolution eps + r L_{J+1};
/// r = 0 gives {origin} with resolution 0.
DendriteNet build_net_Dr(const Rational& r, const Rational& eps, Branch branch_cutoff);

/// Largest power-of-two parameter step 2^-q (q >= 0) with 2^-q * length <= eps.
Rational sample_step(const Rational& length, const Rational& eps);

}  // namespace dendro
