#pragma once

#include "dendro/geometry.hpp"
#include "dendro/hyperspace.hpp"
#include "dendro/itinerary.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dendro {

/// [it, f(it), ..., f^(n-1)(it)]. Pre: n >= 1.
std::vector<Itinerary> orbit(const Itinerary& it, std::uint64_t n);

/// The orbit tail {f^k(seed) : skip <= k < skip + length}, deduplicated.
struct OmegaApprox {
    Itinerary seed;
    std::uint64_t skip;
    std::uint64_t length;
    DendriteNet points;
    Rational tail_tol;
};

OmegaApprox omega_approx(const Itinerary& seed, std::uint64_t skip, std::uint64_t length, const Rational& tail_tol);

/// Parameters of an ω(x, f) = D_r run.
struct OmegaRun {
    std::uint64_t skip = 1000;
    std::uint64_t length = 20000;
    Rational eps{1, 64};
    Branch branch_cutoff = 16;
    Rational tail_tol{1, 256};
};

/// H(orbit tail of special_point(r), net of D_r). `value` is the residual.
HausdorffEstimate verify_omega_equals_Dr(const Rational& r, const OmegaRun& run);

/// Basic open set: points whose itinerary begins with `prefix` and then
/// crosses beam `terminal_branch` at a parameter in (lo, hi).
class Cylinder {
public:
    Cylinder(std::vector<Step> prefix, Branch terminal_branch, Rational lo, Rational hi);

    /// "(n1,a1,...,nk,T;lo,hi)"; "(T;lo,hi)" for an empty prefix.
    static Cylinder parse(std::string_view text);

    const std::vector<Step>& prefix() const { return prefix_; }
    Branch terminal_branch() const { return terminal_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }

    bool contains(const Itinerary& it) const;
    std::string str() const;

private:
    std::vector<Step> prefix_;
    Branch terminal_;
    Rational lo_;
    Rational hi_;
};

struct Witness {
    Itinerary z;
    std::uint64_t n;
};

/// Dyadics of the given level strictly inside (lo, hi), smallest first.
std::optional<Dyadic> dyadic_in(const Rational& lo, const Rational& hi, unsigned level);

/// z in U with f^n(z) in V, checked by forward iteration before returning.
/// z = U.prefix, (U.T, a), V.prefix, (V.T, midpoint of V), with a the
/// lowest-level dyadic in U's interval.
Witness connecting_point(const Cylinder& u, const Cylinder& v);

struct MixingReport {
    std::uint64_t base;       ///< hitting time of V with a dyadic of level 0 and no padding
    std::uint64_t threshold;  ///< every n >= threshold is reachable
    std::vector<Witness> witnesses;
    std::vector<std::uint64_t> unreachable;
};

/// Witnesses for each n in [n_min, n_min + window). The inserted dyadic's
/// level adds one step per level; each (0, 1/2) pad adds two. Times below
/// the construction's reach are listed in `unreachable`.
MixingReport mixing_window(const Cylinder& u, const Cylinder& v, std::uint64_t n_min, std::uint64_t window);

/// Builds the connecting point with a chosen dyadic and padding count.
Itinerary mixing_point(const Cylinder& u, const Cylinder& v, const Dyadic& a, std::uint64_t pads);

struct OmegaSample {
    std::vector<OmegaApprox> approximations;
    Matrix distances;
    Rational error_bar;  ///< largest error bar over all pairs
};

struct OmegaSampleParams {
    std::uint64_t skip = 1000;
    std::uint64_t length = 20000;
    Rational tail_tol{1, 256};
};

OmegaSample sample_omega_hyperspace(const std::vector<Itinerary>& seeds, const OmegaSampleParams& params);

}  // namespace dendro
