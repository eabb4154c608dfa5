#include "dendro/geometry.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dendro {

namespace scheme {

Rational base_length(Branch j) {
    if (j <= 1) {
        return Rational(1);
    }
    return Rational::pow2(1 - static_cast<long>(j));
}

Rational star_scale(unsigned level, const Rational& carrier_length) {
    return carrier_length.mul_pow2(-static_cast<long>(level) - 2);
}

}  // namespace scheme

Rational beam_length(std::span<const Step> prefix, Branch terminal_branch) {
    Rational scale(1);
    for (const Step& s : prefix) {
        scale = scheme::star_scale(s.dyadic.level(), scale * scheme::base_length(s.branch));
    }
    return scale * scheme::base_length(terminal_branch);
}

Rational subtree_diameter_bound(std::span<const Step> prefix, Branch terminal_branch) {
    return beam_length(prefix, terminal_branch).mul_pow2(2);
}

Truncation truncate(const Itinerary& it, const Rational& tol) {
    if (!it.is_lazy()) {
        return {it, Rational(0)};
    }
    if (tol.sign() <= 0) {
        throw std::invalid_argument("truncation tolerance must be positive");
    }
    std::vector<Step> prefix;
    Rational length = scheme::base_length(level_at(it, 0).branch);
    for (std::size_t i = 0;; ++i) {
        const Level level = level_at(it, i);
        if (length.mul_pow2(2) < tol) {
            if (prefix.empty()) {
                return {Itinerary::origin(), length};
            }
            const Step centre = prefix.back();
            prefix.pop_back();
            return {Itinerary::finite(std::move(prefix), centre.branch, centre.dyadic.value()), length};
        }
        const Dyadic star = *level.star;
        prefix.push_back({level.branch, star});
        const Branch next_branch = level_at(it, i + 1).branch;
        length = scheme::star_scale(star.level(), length) * scheme::base_length(next_branch);
    }
}

namespace {

// Per-crossing beam lengths and the arc length below each crossing.
struct Profile {
    std::vector<Level> levels;
    std::vector<Rational> lengths;
    std::vector<Rational> below;  // below[i] = sum_{j >= i} position_j * length_j

    explicit Profile(const Itinerary& it) {
        if (it.is_lazy()) {
            throw std::logic_error("exact profile of a lazy itinerary");
        }
        const std::size_t n = level_count(it);
        levels.reserve(n);
        lengths.reserve(n);
        Rational scale(1);
        for (std::size_t i = 0; i < n; ++i) {
            levels.push_back(level_at(it, i));
            const Level& lv = levels.back();
            lengths.push_back(scale * scheme::base_length(lv.branch));
            if (lv.star) {
                scale = scheme::star_scale(lv.star->level(), lengths.back());
            }
        }
        below.assign(n + 1, Rational(0));
        for (std::size_t i = n; i-- > 0;) {
            below[i] = below[i + 1] + levels[i].position * lengths[i];
        }
    }

    std::size_t size() const { return levels.size(); }
};

Rational exact_distance(const Profile& a, const Profile& b) {
    for (std::size_t i = 0;; ++i) {
        if (i == a.size() || i == b.size()) {
            return a.below[std::min(i, a.size())] + b.below[std::min(i, b.size())];
        }
        const Level& la = a.levels[i];
        const Level& lb = b.levels[i];
        if (la.branch != lb.branch) {
            return a.below[i] + b.below[i];
        }
        if (la.star && lb.star && *la.star == *lb.star) {
            continue;
        }
        return (la.position - lb.position).abs() * a.lengths[i] + a.below[i + 1] + b.below[i + 1];
    }
}

}  // namespace

Rational distance_from_origin(const Itinerary& it) {
    return Profile(it).below[0];
}

Rational intrinsic_distance(const Itinerary& a, const Itinerary& b, const Rational& tol) {
    if (a.is_lazy() && b.is_lazy()) {
        const Rational half = tol.mul_pow2(-1);
        return exact_distance(Profile(truncate(a, half).point), Profile(truncate(b, half).point));
    }
    return exact_distance(Profile(truncate(a, tol).point), Profile(truncate(b, tol).point));
}

Rational sample_step(const Rational& length, const Rational& eps) {
    if (eps.sign() <= 0) {
        throw std::invalid_argument("sampling resolution must be positive");
    }
    long q = 0;
    while (length.mul_pow2(-q) > eps) {
        ++q;
    }
    return Rational::pow2(-q);
}

namespace {

void sample_beam(std::vector<Itinerary>& out, const std::vector<Step>& prefix, Branch branch,
                 const Rational& step, const Rational& upto) {
    for (Rational t = step; t < upto; t += step) {
        out.push_back(Itinerary::finite(prefix, branch, t));
    }
    out.push_back(Itinerary::finite(prefix, branch, upto));
}

void sort_unique(std::vector<Itinerary>& points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
}

}  // namespace

DendriteNet build_net_D_truncated(const TruncationParams& params, const Rational& eps) {
    if (params.depth < 1 || params.branch_cutoff < 1) {
        throw std::invalid_argument("truncated net needs depth >= 1 and branch cutoff >= 1");
    }
    if (eps.sign() <= 0) {
        throw std::invalid_argument("net resolution must be positive");
    }
    const std::string label = "D_" + std::to_string(params.depth) + "[J=" + std::to_string(params.branch_cutoff) +
                              ",L=" + std::to_string(params.level_cutoff) + "]";
    if (eps >= Rational(2)) {
        // Every point of the dendrite is within 1 of the centre.
        return {label, {Itinerary::origin()}, Rational(1)};
    }

    // Discarded beams hang off star centres that are net points; discarded
    // stars hang off sampled beams, whose points are within eps/2 of a sample.
    Rational tail = scheme::base_length(params.branch_cutoff + 1);
    if (params.depth >= 2) {
        tail = max(tail, scheme::star_scale(params.level_cutoff + 1, Rational(1)));
    }
    const Rational resolution = eps + tail;
    if (resolution > Rational(1)) {
        throw std::invalid_argument("certified resolution " + resolution.str() + " exceeds 1");
    }

    std::vector<Dyadic> centres;
    for (unsigned level = 1; level <= params.level_cutoff; ++level) {
        for (std::uint64_t p = 1; p < (std::uint64_t{1} << level); p += 2) {
            centres.emplace_back(p, level);
        }
    }

    std::vector<Itinerary> points{Itinerary::origin()};
    std::vector<Step> prefix;
    std::function<void(unsigned)> visit = [&](unsigned depth) {
        for (Branch n = 0; n <= params.branch_cutoff; ++n) {
            const Rational length = beam_length(prefix, n);
            sample_beam(points, prefix, n, sample_step(length, eps), Rational(1));
            if (depth >= params.depth) {
                continue;
            }
            for (const Dyadic& a : centres) {
                points.push_back(Itinerary::finite(prefix, n, a.value()));
                prefix.push_back({n, a});
                visit(depth + 1);
                prefix.pop_back();
            }
        }
    };
    visit(1);
    sort_unique(points);
    return {label, std::move(points), resolution};
}

DendriteNet build_net_Dr(const Rational& r, const Rational& eps, Branch branch_cutoff) {
    if (r.sign() < 0 || r > Rational(1)) {
        throw std::invalid_argument("D_r needs r in [0,1], got " + r.str());
    }
    std::string label = "D_r[r=" + r.str() + "]";
    if (r.is_zero()) {
        return {std::move(label), {Itinerary::origin()}, Rational(0)};
    }
    std::vector<Itinerary> points{Itinerary::origin()};
    for (Branch j = 0; j <= branch_cutoff; ++j) {
        sample_beam(points, {}, j, sample_step(scheme::base_length(j), eps), r);
    }
    sort_unique(points);
    return {std::move(label), std::move(points), eps + r * scheme::base_length(branch_cutoff + 1)};
}

}  // namespace dendro
