#pragma once

#include "dendro/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace dendro {

/// A dyadic rational p / 2^l in the open unit interval, p odd.
class Dyadic {
public:
    static constexpr unsigned kMaxLevel = 62;

    /// Throws std::invalid_argument unless p is odd, 1 <= p <= 2^l - 1 and
    /// 1 <= l <= kMaxLevel.
    Dyadic(std::uint64_t numerator, unsigned level);

    std::uint64_t numerator() const { return numerator_; }
    unsigned level() const { return level_; }
    Rational value() const;

    /// The dyadic equal to x, if x is a dyadic rational in (0,1).
    static std::optional<Dyadic> from_rational(const Rational& x);

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
    /// Orders by numeric value.
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

private:
    std::uint64_t numerator_;
    unsigned level_;
};

/// a_n in the level-by-level listing 1/2, 1/4, 3/4, 1/8, 3/8, ...
/// The index of p/2^l is 2^(l-1) + (p-1)/2.
Dyadic index_to_dyadic(std::uint64_t n);
std::uint64_t dyadic_to_index(const Dyadic& a);

/// Number of level-l dyadics lying in (0, r], for r in (0,1].
mpz_class gamma_cap_level_count(const Rational& r, unsigned level);

/// b_k: the k-th element of the listing restricted to [0, r], r in (0,1].
Dyadic gamma_cap_kth(const Rational& r, std::uint64_t k);

/// Grid points of [0,1] that a sequence keeps returning to, at a given
/// resolution. A grid point g is marked when at least ceil(log2 N) of the
/// terms with index in (N/2, N] satisfy |x - g| <= grid_step.
struct SequenceOmegaApprox {
    Rational grid_step;
    std::vector<Rational> hit_grid;
};

/// `sequence(n)` returns the n-th term (1-based), a rational in [0,1].
SequenceOmegaApprox omega_of_sequence_approx(const std::function<Rational(std::uint64_t)>& sequence,
                                             std::uint64_t count, const Rational& grid_step);

}  // namespace dendro
