#include "dendro/generators.hpp"
#include "dendro/interval.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace dendro;
using dendro::testing::Q;

namespace {

Rational oracle_tent(const Rational& x) {
    return Rational(1) - (Rational(1) - x.mul_pow2(1)).abs();
}

// Single cycle iff F is exactly the cycle reached from its smallest point
// with no transient.
bool oracle_single_cycle(const std::vector<Rational>& f) {
    const std::set<Rational> members(f.begin(), f.end());
    const TentOrbit o = eventual_period(*members.begin(), 4 * members.size() + 8);
    return o.preperiod == 0 && std::set<Rational>(o.cycle.begin(), o.cycle.end()) == members;
}

// Sweep of uncovered parts of [0,1] by balls of radius delta.
bool oracle_dense(std::vector<Rational> xs, const Rational& delta) {
    std::sort(xs.begin(), xs.end());
    Rational covered(0);
    for (const Rational& x : xs) {
        if (x - delta > covered) return false;
        covered = max(covered, x + delta);
    }
    return covered >= Rational(1);
}

}  // namespace

TEST(Tent, Examples) {
    EXPECT_EQ(tent(Q("1/2")), Q("1"));
    EXPECT_EQ(tent(Q("2/3")), Q("2/3"));
    EXPECT_EQ(tent(Q("2/5")), Q("4/5"));
    EXPECT_EQ(tent(Q("0")), Q("0"));
    EXPECT_EQ(tent(Q("1")), Q("0"));
    EXPECT_THROW(tent(Q("-1/3")), std::domain_error);
    EXPECT_THROW(tent(Q("4/3")), std::domain_error);
}

TEST(Tent, MatchesClosedForm) {
    gen::Rng rng(83);
    for (int i = 0; i < 2000; ++i) {
        const Rational x = gen::unit_rational(rng, 1000);
        EXPECT_EQ(tent(x), oracle_tent(x));
    }
}

TEST(EventualPeriod, Examples) {
    const TentOrbit fixed = eventual_period(Q("2/3"), 10);
    EXPECT_EQ(fixed.preperiod, 0u);
    EXPECT_EQ(fixed.period, 1u);
    const TentOrbit two = eventual_period(Q("2/5"), 10);
    EXPECT_EQ(two.preperiod, 0u);
    EXPECT_EQ(two.period, 2u);
    EXPECT_EQ(two.cycle, (std::vector<Rational>{Q("2/5"), Q("4/5")}));
    const TentOrbit third = eventual_period(Q("1/3"), 10);
    EXPECT_EQ(third.preperiod, 1u);
    EXPECT_EQ(third.cycle, std::vector<Rational>{Q("2/3")});
    const TentOrbit half = eventual_period(Q("1/2"), 10);
    EXPECT_EQ(half.preperiod, 2u);
    EXPECT_EQ(half.cycle, std::vector<Rational>{Q("0")});
    EXPECT_THROW(eventual_period(Rational::pow2(-30), 10), std::runtime_error);
}

TEST(EventualPeriod, CycleStructure) {
    gen::Rng rng(89);
    for (int i = 0; i < 300; ++i) {
        const Rational x = gen::unit_rational(rng, 2000);
        const TentOrbit o = eventual_period(x, 5000);
        ASSERT_EQ(o.cycle.size(), o.period);
        Rational y = x;
        std::vector<Rational> transient;
        for (std::uint64_t k = 0; k < o.preperiod; ++k) {
            transient.push_back(y);
            y = tent(y);
        }
        EXPECT_EQ(y, o.cycle.front());
        for (std::size_t k = 0; k < o.cycle.size(); ++k) {
            EXPECT_EQ(tent(o.cycle[k]), o.cycle[(k + 1) % o.cycle.size()]);
        }
        const std::set<Rational> cycle(o.cycle.begin(), o.cycle.end());
        EXPECT_EQ(cycle.size(), o.period);
        for (const Rational& t : transient) EXPECT_FALSE(cycle.contains(t)) << x;
    }
}

TEST(PeriodicOrbit, Examples) {
    EXPECT_TRUE(is_periodic_orbit({Q("0")}));
    EXPECT_TRUE(is_periodic_orbit({Q("4/5"), Q("2/5")}));
    EXPECT_FALSE(is_periodic_orbit({Q("0"), Q("2/3")}));
    EXPECT_FALSE(is_periodic_orbit({Q("1/3"), Q("2/3")}));
    EXPECT_FALSE(is_periodic_orbit({Q("1/2"), Q("1"), Q("0")}));
    EXPECT_THROW(is_periodic_orbit({}), std::invalid_argument);
}

TEST(PeriodicOrbit, AgreesWithOracleOnCyclesAndRandomSets) {
    gen::Rng rng(97);
    for (int i = 0; i < 100; ++i) {
        const IntervalNet cycle = periodic_orbit_net(gen::unit_rational(rng, 200), 1000);
        EXPECT_TRUE(is_finite_omega_limit(cycle.points));
        EXPECT_TRUE(oracle_single_cycle(cycle.points));
    }
    for (int i = 0; i < 100; ++i) {
        std::vector<Rational> f;
        for (auto k = gen::uniform(rng, 1, 5); k > 0; --k) f.push_back(gen::unit_rational(rng, 12));
        EXPECT_EQ(is_finite_omega_limit(f), oracle_single_cycle(f));
    }
    // two disjoint cycles are not one orbit
    EXPECT_FALSE(is_periodic_orbit({Q("0"), Q("2/5"), Q("4/5")}));
}

TEST(InteriorEmpty, Examples) {
    const std::vector<Rational> b{Q("2/3")};
    const InteriorEmptyReport leaves = interior_empty_demo(b, Q("1/5"));
    EXPECT_EQ(leaves.c, (std::vector<Rational>{Q("1/5"), Q("2/3")}));
    EXPECT_FALSE(leaves.c_is_omega_limit);
    EXPECT_NE(leaves.reason.find("leaves C"), std::string::npos);
    const InteriorEmptyReport fixed = interior_empty_demo(b, Q("0"));
    EXPECT_FALSE(fixed.c_is_omega_limit);
    EXPECT_NE(fixed.reason.find("fixed point"), std::string::npos);
    const InteriorEmptyReport into = interior_empty_demo(b, Q("1/3"));
    EXPECT_FALSE(into.c_is_omega_limit);
    EXPECT_THROW(interior_empty_demo(b, Q("2/3")), std::invalid_argument);
    EXPECT_THROW(interior_empty_demo({Q("1/3")}, Q("0")), std::invalid_argument);
    EXPECT_THROW(interior_empty_demo(b, Q("3/2")), std::invalid_argument);
}

TEST(InteriorEmpty, RandomCyclesAndPoints) {
    gen::Rng rng(101);
    for (int i = 0; i < 100; ++i) {
        const IntervalNet b = periodic_orbit_net(gen::unit_rational(rng, 100), 1000);
        Rational y = gen::unit_rational(rng, 100);
        if (std::find(b.points.begin(), b.points.end(), y) != b.points.end()) continue;
        EXPECT_FALSE(interior_empty_demo(b.points, y).c_is_omega_limit);
    }
}

TEST(DeltaDense, Examples) {
    EXPECT_TRUE(is_delta_dense({Q("1/2")}, Q("1/2")));
    EXPECT_FALSE(is_delta_dense({Q("1/2")}, Q("1/4")));
    EXPECT_TRUE(is_delta_dense({Q("3/4"), Q("1/4")}, Q("1/4")));
    EXPECT_FALSE(is_delta_dense({}, Q("1")));
}

TEST(DeltaDense, MatchesSweep) {
    gen::Rng rng(103);
    for (int i = 0; i < 1000; ++i) {
        std::vector<Rational> xs;
        for (auto k = gen::uniform(rng, 1, 8); k > 0; --k) xs.push_back(gen::unit_rational(rng, 16));
        const Rational delta(1, static_cast<long>(gen::uniform(rng, 2, 12)));
        EXPECT_EQ(is_delta_dense(xs, delta), oracle_dense(xs, delta));
    }
}

TEST(DenseOrbitSearch, FindsDenseSeeds) {
    const DensitySearch params;
    const Rational seed = dense_orbit_search(params);
    std::vector<Rational> xs;
    Rational y = seed;
    for (int k = 0; k < 10000; ++k) {
        xs.push_back(y);
        y = tent(y);
    }
    EXPECT_TRUE(oracle_dense(xs, Q("1/32")));
    EXPECT_EQ(seed, dense_orbit_search(params));

    DensitySearch trivial;
    trivial.delta = Q("1");
    trivial.iterates = 1;
    trivial.seeds = 1;
    EXPECT_NO_THROW(dense_orbit_search(trivial));
}

TEST(DenseOrbitSearch, WindowAndFailures) {
    DensitySearch windowed;
    windowed.window = std::pair{Q("3/10"), Q("1/3")};
    const Rational seed = dense_orbit_search(windowed);
    EXPECT_LT(Q("3/10"), seed);
    EXPECT_LT(seed, Q("1/3"));

    DensitySearch hopeless;
    hopeless.delta = Rational::pow2(-20);
    hopeless.iterates = 10;
    hopeless.seeds = 3;
    EXPECT_THROW(dense_orbit_search(hopeless), std::runtime_error);
    DensitySearch bad;
    bad.window = std::pair{Q("1/2"), Q("1/2")};
    EXPECT_THROW(dense_orbit_search(bad), std::invalid_argument);
}

TEST(Separation, CutsAroundTheFarPoint) {
    const IntervalNet a = periodic_orbit_net(Q("0"), 10);
    const IntervalNet b = periodic_orbit_net(Q("2/3"), 10);
    const DensitySearch density;
    const SeparatorPair sep = separation_construct(a, b, Q("1/20"), density);
    EXPECT_EQ(sep.p, Q("0"));
    ASSERT_EQ(sep.cut_points.size(), 1u);
    EXPECT_LT(Q("0"), sep.cut_points[0]);
    EXPECT_LT(sep.cut_points[0], Q("1/20"));
    EXPECT_TRUE(sep.in_u(b));
    EXPECT_TRUE(sep.in_v(a));
    EXPECT_FALSE(sep.in_u(a));
    EXPECT_FALSE(sep.in_v(b));
    for (const Rational& r : sep.cut_points) {
        std::vector<Rational> xs;
        Rational y = r;
        for (std::uint64_t k = 0; k < density.iterates; ++k) {
            xs.push_back(y);
            y = tent(y);
        }
        EXPECT_TRUE(oracle_dense(xs, density.delta));
    }
}

TEST(Separation, InteriorPointGetsTwoCuts) {
    const IntervalNet a = periodic_orbit_net(Q("2/5"), 10);  // {2/5, 4/5}
    const IntervalNet b = periodic_orbit_net(Q("0"), 10);
    const SeparatorPair sep = separation_construct(a, b, Q("1/20"), {});
    EXPECT_EQ(sep.p, Q("4/5"));
    ASSERT_EQ(sep.cut_points.size(), 2u);
    EXPECT_EQ(sep.u_nbhd.members.size(), 1u);
    EXPECT_TRUE(sep.in_u(b));
    EXPECT_TRUE(sep.in_v(a));
}

TEST(Separation, Preconditions) {
    const IntervalNet a = periodic_orbit_net(Q("2/3"), 10);
    EXPECT_THROW(separation_construct(a, a, Q("1/20"), {}), std::invalid_argument);
    const IntervalNet close = {"close", {Q("2/3"), Q("7/10")}, Q("0")};
    EXPECT_THROW(separation_construct(close, a, Q("1/20"), {}), std::invalid_argument);
    EXPECT_THROW(separation_construct(periodic_orbit_net(Q("0"), 10), a, Q("0"), {}), std::invalid_argument);
}

TEST(Separation, VerifyClassifiesSamples) {
    const IntervalNet a = periodic_orbit_net(Q("0"), 10);
    const IntervalNet b = periodic_orbit_net(Q("2/3"), 10);
    const SeparatorPair sep = separation_construct(a, b, Q("1/20"), {});
    const IntervalNet whole = dense_orbit_net(dense_orbit_search({}), 10000, Q("1/32"));
    const SeparationReport r = separation_verify(sep, {a, b, whole, periodic_orbit_net(Q("2/5"), 10)});
    EXPECT_EQ(r.classes, (std::vector<SeparationClass>{SeparationClass::in_v, SeparationClass::in_u,
                                                       SeparationClass::margin, SeparationClass::in_u}));
    EXPECT_EQ(r.failures, 0u);
    EXPECT_EQ(r.outside_margin(), 3u);
    EXPECT_EQ(to_string(SeparationClass::margin), "margin");
}

TEST(Separation, RandomCyclesNeverLandInBothOrNeither) {
    gen::Rng rng(107);
    std::size_t decided = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const IntervalNet a = periodic_orbit_net(gen::unit_rational(rng, 30), 1000);
        const IntervalNet b = periodic_orbit_net(gen::unit_rational(rng, 30), 1000);
        SeparatorPair sep;
        try {
            sep = separation_construct(a, b, Q("1/40"), {});
        } catch (const std::invalid_argument&) {
            continue;
        }
        std::vector<IntervalNet> samples;
        for (int k = 0; k < 20; ++k) samples.push_back(periodic_orbit_net(gen::unit_rational(rng, 50), 1000));
        const SeparationReport r = separation_verify(sep, samples);
        EXPECT_EQ(r.failures, 0u);
        decided += r.outside_margin();
    }
    EXPECT_GT(decided, 0u);
}
