#include "dendro/interval.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace dendro {

Rational tent(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) {
        throw std::domain_error("tent map is defined on [0,1], got " + x.str());
    }
    if (x <= Rational(1, 2)) {
        return x.mul_pow2(1);
    }
    return Rational(2) - x.mul_pow2(1);
}

TentOrbit eventual_period(const Rational& x, std::uint64_t cap) {
    std::map<Rational, std::uint64_t> seen;
    std::vector<Rational> path;
    Rational y = x;
    while (true) {
        auto [it, fresh] = seen.try_emplace(y, path.size());
        if (!fresh) {
            const std::uint64_t start = it->second;
            return {x, start, path.size() - start, std::vector<Rational>(path.begin() + static_cast<long>(start), path.end())};
        }
        if (path.size() >= cap) {
            throw std::runtime_error("orbit of " + x.str() + " has more than " + std::to_string(cap) +
                                     " distinct iterates");
        }
        path.push_back(y);
        y = tent(y);
    }
}

bool is_periodic_orbit(const std::vector<Rational>& f) {
    if (f.empty()) {
        throw std::invalid_argument("periodic orbit test needs a non-empty set");
    }
    const std::set<Rational> members(f.begin(), f.end());
    const Rational start = *members.begin();
    Rational y = start;
    for (std::size_t k = 1; k <= members.size(); ++k) {
        y = tent(y);
        if (!members.contains(y)) return false;
        if (y == start) return k == members.size();
    }
    return false;
}

bool is_finite_omega_limit(const std::vector<Rational>& f) {
    return is_periodic_orbit(f);
}

InteriorEmptyReport interior_empty_demo(const std::vector<Rational>& b, const Rational& y) {
    if (!is_periodic_orbit(b)) {
        throw std::invalid_argument("B must be a periodic orbit");
    }
    if (y.sign() < 0 || y > Rational(1)) {
        throw std::invalid_argument("y must lie in [0,1]");
    }
    if (std::find(b.begin(), b.end(), y) != b.end()) {
        throw std::invalid_argument("y must not belong to B");
    }
    InteriorEmptyReport report;
    std::set<Rational> c(b.begin(), b.end());
    c.insert(y);
    report.c.assign(c.begin(), c.end());
    report.c_is_omega_limit = is_finite_omega_limit(report.c);
    const Rational ty = tent(y);
    if (!c.contains(ty)) {
        report.reason = "T(" + y.str() + ") = " + ty.str() + " leaves C";
    } else if (ty == y) {
        report.reason = y.str() + " is a second fixed point in C";
    } else {
        report.reason = "T(" + y.str() + ") = " + ty.str() + " is in B, so no point of C maps to " + y.str() +
                        " inside a single cycle";
    }
    return report;
}

bool is_delta_dense(std::vector<Rational> points, const Rational& delta) {
    if (points.empty()) return false;
    std::sort(points.begin(), points.end());
    if (points.front() > delta || points.back() < Rational(1) - delta) return false;
    const Rational gap = delta.mul_pow2(1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i] - points[i - 1] > gap) return false;
    }
    return true;
}

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Largest gap (in units of 1/q) left by the first n iterates of p/q; the
// ends count double since they only need to be within half of it.
std::uint64_t widest_gap(std::uint64_t p, std::uint64_t q, std::uint64_t n) {
    std::vector<std::uint64_t> xs;
    xs.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        xs.push_back(p);
        p = 2 * p <= q ? 2 * p : 2 * q - 2 * p;
    }
    std::sort(xs.begin(), xs.end());
    std::uint64_t widest = std::max(2 * xs.front(), 2 * (q - xs.back()));
    for (std::size_t i = 1; i < xs.size(); ++i) widest = std::max(widest, xs[i] - xs[i - 1]);
    return widest;
}

}  // namespace

Rational dense_orbit_search(const DensitySearch& params) {
    if (params.delta.sign() <= 0) {
        throw std::invalid_argument("density radius must be positive");
    }
    if (params.iterates < 1 || params.seeds < 1) {
        throw std::invalid_argument("density search needs at least one iterate and one seed");
    }
    Rational lo(0), hi(1);
    if (params.window) {
        std::tie(lo, hi) = *params.window;
        if (lo.sign() < 0 || hi > Rational(1) || !(lo < hi)) {
            throw std::invalid_argument("search window must satisfy 0 <= lo < hi <= 1");
        }
    }
    std::mt19937_64 rng(params.rng_seed);
    const std::uint64_t q_min = std::uint64_t{1} << 20;
    Rational best_gap(2);
    for (std::uint64_t attempt = 0; attempt < params.seeds; ++attempt) {
        std::uint64_t q = q_min + rng() % q_min;
        while (!is_prime(q)) ++q;
        // numerators strictly inside (lo q, hi q)
        const Rational qq(static_cast<long>(q));
        const mpz_class first = (lo * qq).floor() + 1;
        const mpz_class last = (hi * qq).ceil() - 1;
        if (first > last) continue;
        const std::uint64_t span = mpz_class(last - first + 1).get_ui();
        const std::uint64_t p = first.get_ui() + rng() % span;
        const Rational gap(static_cast<long>(widest_gap(p, q, params.iterates)), static_cast<long>(q));
        if (gap <= params.delta.mul_pow2(1)) {
            return Rational(static_cast<long>(p), static_cast<long>(q));
        }
        best_gap = min(best_gap, gap);
    }
    throw std::runtime_error("no δ-dense orbit among " + std::to_string(params.seeds) + " seeds (δ = " +
                             params.delta.str() + ", " + std::to_string(params.iterates) +
                             " iterates); narrowest widest gap " + best_gap.str());
}

IntervalNet dense_orbit_net(const Rational& seed, std::uint64_t n, const Rational& delta) {
    std::vector<Rational> points;
    Rational y = seed;
    for (std::uint64_t k = 0; k < n; ++k) {
        points.push_back(y);
        y = tent(y);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (!is_delta_dense(points, delta)) {
        throw std::invalid_argument("orbit of " + seed.str() + " is not " + delta.str() + "-dense");
    }
    return {"orbit[" + seed.str() + ",n=" + std::to_string(n) + "]", std::move(points), delta};
}

IntervalNet periodic_orbit_net(const Rational& seed, std::uint64_t cap) {
    TentOrbit o = eventual_period(seed, cap);
    std::sort(o.cycle.begin(), o.cycle.end());
    return {"cycle[" + seed.str() + "]", std::move(o.cycle), Rational(0)};
}

std::string Interval::str() const {
    return std::string(lo_closed ? "[" : "(") + lo.str() + "," + hi.str() + (hi_closed ? "]" : ")");
}

namespace {

bool meets_all_and_covered(const std::vector<Rational>& points, const VietorisNbhd<Interval>& nbhd) {
    return vietoris_contains<Rational, Interval>(points, nbhd);
}

Rational distance_to(const Rational& x, const std::vector<Rational>& set) {
    Rational best = (x - set.front()).abs();
    for (const Rational& y : set) best = min(best, (x - y).abs());
    return best;
}

}  // namespace

bool SeparatorPair::in_u(const IntervalNet& s) const {
    return meets_all_and_covered(s.points, u_nbhd);
}

bool SeparatorPair::in_v(const IntervalNet& s) const {
    return !meets_all_and_covered(s.points, u_closure);
}

SeparatorPair separation_construct(const IntervalNet& a, const IntervalNet& b, const Rational& delta,
                                   const DensitySearch& density) {
    if (a.points.empty() || b.points.empty()) {
        throw std::invalid_argument("separation needs non-empty sets");
    }
    if (delta.sign() <= 0) {
        throw std::invalid_argument("separation radius must be positive");
    }
    {
        std::set<Rational> sa(a.points.begin(), a.points.end());
        std::set<Rational> sb(b.points.begin(), b.points.end());
        if (sa == sb) {
            throw std::invalid_argument("A and B must differ");
        }
    }
    // p: the point of A farthest from B; ties go to the smaller point.
    SeparatorPair sep;
    Rational far(-1);
    for (const Rational& x : a.points) {
        const Rational d = distance_to(x, b.points);
        if (d > far || (d == far && x < sep.p)) {
            far = d;
            sep.p = x;
        }
    }
    if (!(far > delta.mul_pow2(1))) {
        throw std::invalid_argument("no point of A lies more than 2δ = " + delta.mul_pow2(1).str() + " from B");
    }
    sep.delta = delta;
    sep.window = {sep.p - delta, sep.p + delta};

    auto cut = [&](const Rational& lo, const Rational& hi, std::uint64_t salt) {
        DensitySearch d = density;
        d.window = {lo, hi};
        d.rng_seed = density.rng_seed * 2 + salt;
        const Rational r = dense_orbit_search(d);
        if (!is_delta_dense(dense_orbit_net(r, d.iterates, d.delta).points, d.delta)) {
            throw std::logic_error("cut point " + r.str() + " lost its dense orbit");
        }
        return r;
    };
    if (sep.p.sign() > 0) {
        const Rational r1 = cut(max(Rational(0), sep.p - delta), sep.p, 0);
        sep.cut_points.push_back(r1);
        sep.components.push_back({Rational(0), r1, true, false});
    }
    if (sep.p < Rational(1)) {
        const Rational r2 = cut(sep.p, min(Rational(1), sep.p + delta), 1);
        sep.cut_points.push_back(r2);
        sep.components.push_back({r2, Rational(1), false, true});
    }
    for (const Interval& k : sep.components) {
        if (std::any_of(b.points.begin(), b.points.end(), [&](const Rational& x) { return k.contains(x); })) {
            sep.u_nbhd.members.push_back(k);
            sep.u_closure.members.push_back(k.closure());
        }
    }
    if (!sep.in_u(b)) {
        throw std::logic_error("B is not in the constructed neighbourhood");
    }
    if (!sep.in_v(a)) {
        throw std::logic_error("A is in the closure of the constructed neighbourhood");
    }
    return sep;
}

std::string to_string(SeparationClass c) {
    switch (c) {
        case SeparationClass::in_u: return "U";
        case SeparationClass::in_v: return "V";
        case SeparationClass::margin: return "margin";
        case SeparationClass::both: return "both";
        case SeparationClass::neither: return "neither";
    }
    return "?";
}

SeparationReport separation_verify(const SeparatorPair& sep, const std::vector<IntervalNet>& samples) {
    SeparationReport report;
    for (const IntervalNet& s : samples) {
        const bool near_cut = std::any_of(s.points.begin(), s.points.end(), [&](const Rational& x) {
            return std::any_of(sep.cut_points.begin(), sep.cut_points.end(),
                               [&](const Rational& r) { return (x - r).abs() <= s.resolution; });
        });
        SeparationClass c;
        if (near_cut) {
            c = SeparationClass::margin;
            ++report.margin;
        } else {
            const bool u = sep.in_u(s);
            const bool v = sep.in_v(s);
            if (u && v) {
                c = SeparationClass::both;
                ++report.failures;
            } else if (u) {
                c = SeparationClass::in_u;
                ++report.in_u;
            } else if (v) {
                c = SeparationClass::in_v;
                ++report.in_v;
            } else {
                c = SeparationClass::neither;
                ++report.failures;
            }
        }
        report.classes.push_back(c);
    }
    return report;
}

}  // namespace dendro
