#include "dendro/dyadics.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace dendro {

Dyadic::Dyadic(std::uint64_t numerator, unsigned level) : numerator_(numerator), level_(level) {
    if (level < 1 || level > kMaxLevel) {
        throw std::invalid_argument("dyadic level out of range: " + std::to_string(level));
    }
    if (numerator % 2 == 0 || numerator >= (std::uint64_t{1} << level)) {
        throw std::invalid_argument("invalid dyadic numerator " + std::to_string(numerator) + " at level " +
                                    std::to_string(level));
    }
}

Rational Dyadic::value() const {
    return Rational(numerator_).mul_pow2(-static_cast<long>(level_));
}

std::optional<Dyadic> Dyadic::from_rational(const Rational& x) {
    if (x.sign() <= 0 || x >= Rational(1)) {
        return std::nullopt;
    }
    const mpz_class den = x.denominator();
    if (mpz_popcount(den.get_mpz_t()) != 1) {
        return std::nullopt;
    }
    const auto level = static_cast<unsigned>(mpz_sizeinbase(den.get_mpz_t(), 2) - 1);
    if (level > kMaxLevel) {
        return std::nullopt;
    }
    return Dyadic(x.numerator().get_ui(), level);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const unsigned top = std::max(a.level_, b.level_);
    const auto lhs = static_cast<unsigned __int128>(a.numerator_) << (top - a.level_);
    const auto rhs = static_cast<unsigned __int128>(b.numerator_) << (top - b.level_);
    return lhs <=> rhs;
}

Dyadic index_to_dyadic(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("dyadic index starts at 1");
    }
    const auto level = static_cast<unsigned>(std::bit_width(n));
    const std::uint64_t offset = n - (std::uint64_t{1} << (level - 1));
    return Dyadic(2 * offset + 1, level);
}

std::uint64_t dyadic_to_index(const Dyadic& a) {
    return (std::uint64_t{1} << (a.level() - 1)) + (a.numerator() - 1) / 2;
}

mpz_class gamma_cap_level_count(const Rational& r, unsigned level) {
    // Odd p with p <= floor(r 2^l); p = 2^l itself is even so r = 1 needs no special case.
    const mpz_class top = r.mul_pow2(level).floor();
    mpz_class count = (top + 1) / 2;
    return count;
}

Dyadic gamma_cap_kth(const Rational& r, std::uint64_t k) {
    if (r.sign() <= 0 || r > Rational(1)) {
        throw std::invalid_argument("gamma_cap_kth requires r in (0,1], got " + r.str());
    }
    if (k == 0) {
        throw std::invalid_argument("gamma_cap_kth index starts at 1");
    }
    mpz_class remaining(static_cast<unsigned long>(k));
    for (unsigned level = 1; level <= Dyadic::kMaxLevel; ++level) {
        const mpz_class count = gamma_cap_level_count(r, level);
        if (remaining <= count) {
            const std::uint64_t j = remaining.get_ui();
            return Dyadic(2 * j - 1, level);
        }
        remaining -= count;
    }
    throw std::overflow_error("gamma_cap_kth exceeds representable dyadic level for r = " + r.str());
}

SequenceOmegaApprox omega_of_sequence_approx(const std::function<Rational(std::uint64_t)>& sequence,
                                             std::uint64_t count, const Rational& grid_step) {
    if (count == 0) {
        throw std::invalid_argument("omega_of_sequence_approx needs at least one term");
    }
    if (grid_step.sign() <= 0 || grid_step >= Rational(1)) {
        throw std::invalid_argument("grid step must lie in (0,1), got " + grid_step.str());
    }
    const mpz_class last_mpz = (Rational(1) / grid_step).floor();
    const std::size_t last = last_mpz.get_ui();
    std::vector<std::uint64_t> hits(last + 1, 0);

    for (std::uint64_t n = count / 2 + 1; n <= count; ++n) {
        const Rational x = sequence(n);
        if (x.sign() < 0 || x > Rational(1)) {
            throw std::invalid_argument("sequence term outside [0,1]: " + x.str());
        }
        const Rational scaled = x / grid_step;
        const mpz_class lo_mpz = (scaled - Rational(1)).ceil();
        const mpz_class hi_mpz = (scaled + Rational(1)).floor();
        const long lo = std::max(0L, lo_mpz.get_si());
        const long hi = std::min(static_cast<long>(last), hi_mpz.get_si());
        for (long i = lo; i <= hi; ++i) {
            ++hits[static_cast<std::size_t>(i)];
        }
    }

    const auto threshold = std::max<std::uint64_t>(1, std::bit_width(count - 1));  // ceil(log2 N)
    SequenceOmegaApprox out{grid_step, {}};
    for (std::size_t i = 0; i <= last; ++i) {
        if (hits[i] >= threshold) {
            out.hit_grid.push_back(grid_step * Rational(i));
        }
    }
    return out;
}

}  // namespace dendro
