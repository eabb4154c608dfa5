#pragma once

#include "dendro/geometry.hpp"
#include "dendro/rational.hpp"

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <stdexcept>
#include <span>
#include <string>
#include <vector>

namespace dendro {

using Matrix = std::vector<std::vector<Rational>>;

/// sup_{a in from} inf_{b in to} d(a, b) by exhaustive search.
template <class Point, class Metric>
Rational directed_hausdorff_bruteforce(std::span<const Point> from, std::span<const Point> to, const Metric& d) {
    if (from.empty() || to.empty()) {
        throw std::invalid_argument("Hausdorff distance of an empty set");
    }
    Rational worst(0);
    for (const Point& a : from) {
        Rational best = d(a, to.front());
        for (const Point& b : to.subspan(1)) {
            if (best.is_zero()) break;
            Rational candidate = d(a, b);
            if (candidate < best) best = std::move(candidate);
        }
        if (best > worst) worst = std::move(best);
    }
    return worst;
}

template <class Point, class Metric>
Rational hausdorff_bruteforce(std::span<const Point> a, std::span<const Point> b, const Metric& d) {
    return max(directed_hausdorff_bruteforce(a, b, d), directed_hausdorff_bruteforce(b, a, d));
}

/// Hausdorff distance between two nets together with its certified error:
/// |value - H(targets)| <= error_bar.
struct HausdorffEstimate {
    Rational value;
    Rational forward;   ///< sup over A of the distance to B
    Rational backward;  ///< sup over B of the distance to A
    Rational error_bar;
};

/// Exact directed distances between finite point sets of the dendrite,
/// computed on the smallest subtree spanning both sets: one bottom-up and one
/// top-down pass give every vertex its distance to the nearest target point.
/// Lazy points are truncated at `tail_tol` first.
HausdorffEstimate hausdorff(const DendriteNet& a, const DendriteNet& b, const Rational& tail_tol);

/// Hausdorff distance of nets in [0,1] with the usual metric.
HausdorffEstimate hausdorff(const IntervalNet& a, const IntervalNet& b);

/// Bit set over the points of a finite metric space (at most 32 points).
class Subset {
public:
    constexpr Subset() = default;
    constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}
    static Subset of(std::initializer_list<std::size_t> points);

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(std::size_t point) const { return (bits_ >> point) & 1u; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool intersects(Subset other) const { return (bits_ & other.bits_) != 0; }
    constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
    constexpr Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
    constexpr Subset minus(Subset o) const { return Subset(bits_ & ~o.bits_); }
    std::vector<std::size_t> elements() const;
    std::string str() const;

    friend constexpr bool operator==(Subset, Subset) = default;

private:
    std::uint32_t bits_ = 0;
};

/// Basis element ⟨U_1, ..., U_n⟩: sets contained in the union of the U_i and
/// meeting each of them. `Set` needs `bool contains(const Point&) const`.
template <class Set>
struct VietorisNbhd {
    std::vector<Set> members;
};

template <class Point, class Set>
bool vietoris_contains(std::span<const Point> k, const VietorisNbhd<Set>& nbhd) {
    if (k.empty()) {
        throw std::invalid_argument("Vietoris membership of an empty set");
    }
    for (const Point& x : k) {
        bool covered = false;
        for (const Set& u : nbhd.members) {
            if (u.contains(x)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    for (const Set& u : nbhd.members) {
        bool met = false;
        for (const Point& x : k) {
            if (u.contains(x)) {
                met = true;
                break;
            }
        }
        if (!met) return false;
    }
    return true;
}

bool vietoris_contains(Subset k, const VietorisNbhd<Subset>& nbhd);

/// A finite metric space with an observation radius. `closure_radius` = 0
/// gives the exact metric closure (every subset is closed); a positive
/// radius η treats points within η as limits, cl(U) = {x : d(x, U) <= η},
/// and the same radius is used for closures in the hyperspace.
struct FiniteMetricSpace {
    static constexpr std::size_t kMaxEnumerated = 12;

    std::vector<std::string> labels;
    Matrix distances;
    Rational closure_radius;

    std::size_t size() const { return labels.size(); }
    Subset all() const { return Subset(size() == 32 ? ~0u : ((1u << size()) - 1)); }

    /// Throws std::invalid_argument unless the matrix is a metric.
    void validate() const;
};

/// Points of the path 0 - 1 - ... - (n-1) with unit edges.
FiniteMetricSpace path_metric_space(std::size_t n, const Rational& closure_radius);

/// Shortest-path metric of a complete graph with random weights 1..6.
FiniteMetricSpace random_metric_space(std::size_t n, std::mt19937_64& rng);

Subset metric_closure(const FiniteMetricSpace& x, Subset u);

/// Exact Hausdorff distance between non-empty subsets.
Rational hausdorff(const FiniteMetricSpace& x, Subset a, Subset b);

struct ClosureReport {
    bool equal = true;
    std::size_t members = 0;          ///< |⟨U⟩|
    std::size_t closure_members = 0;  ///< |cl ⟨U⟩|
    std::optional<Subset> counterexample;
};

/// Compares the closure of ⟨U_1..U_n⟩ in the hyperspace, computed from the
/// Hausdorff metric over all subsets, with ⟨cl U_1, ..., cl U_n⟩.
ClosureReport vietoris_closure_bruteforce(const FiniteMetricSpace& x, std::span<const Subset> us);

/// A ∈ cl⟨U⟩ (by direct Hausdorff search over all subsets).
bool in_hyperspace_closure(const FiniteMetricSpace& x, std::span<const Subset> us, Subset a);

struct BoundaryWitness {
    std::size_t point;
    std::size_t index;  ///< j, 0-based
    int which_case;     ///< 1: A misses U_j;  2: A leaves the union
};

/// For A in cl⟨U⟩ \ ⟨U⟩, a point a in A and j with a in cl(U_j) \ U_j.
/// Throws std::invalid_argument("A not in the boundary") otherwise.
BoundaryWitness boundary_element_witness(const FiniteMetricSpace& x, std::span<const Subset> us, Subset a);

struct ArcProfile {
    std::vector<Rational> grid;
    std::vector<Rational> resolutions;
    Matrix distances;
};

/// Pairwise Hausdorff distances between nets of D_r over a grid of r values.
ArcProfile arc_profile(std::span<const Rational> grid, const Rational& eps, Branch branch_cutoff);

}  // namespace dendro
