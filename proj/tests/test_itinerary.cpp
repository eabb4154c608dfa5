#include "dendro/generators.hpp"
#include "dendro/itinerary.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace dendro;
using dendro::testing::I;
using dendro::testing::Q;

namespace {

// Rewrite rules written out independently on (branches, dyadics, param).
struct Plain {
    std::vector<std::uint64_t> branches;  // n_1..n_k
    std::vector<Dyadic> dyadics;          // a_1..a_{k-1}
    Rational param;
    bool origin = false;
};

Plain plain(const Itinerary& it) {
    Plain p;
    if (it.is_origin()) {
        p.origin = true;
        return p;
    }
    for (const Step& s : it.steps()) {
        p.branches.push_back(s.branch);
        p.dyadics.push_back(s.dyadic);
    }
    p.branches.push_back(it.terminal_branch());
    p.param = it.param();
    return p;
}

void step(Plain& p) {
    if (p.origin) return;
    if (p.branches.front() > 0) {
        --p.branches.front();
    } else if (p.dyadics.empty()) {
        p.origin = true;
    } else {
        const unsigned l = p.dyadics.front().level();
        p.branches.erase(p.branches.begin());
        p.dyadics.erase(p.dyadics.begin());
        p.branches.front() += l;
    }
}

bool same(const Plain& p, const Itinerary& it) {
    const Plain q = plain(it);
    if (p.origin || q.origin) return p.origin == q.origin;
    return p.branches == q.branches && p.dyadics == q.dyadics && p.param == q.param;
}

}  // namespace

TEST(ItineraryText, RoundTrips) {
    for (const char* text : {"(0)", "(3,7/10)", "(0,3/8,2,1/2)", "(1,1/2,0,1/4,5,1)", "(0,*gamma[1,1])",
                             "(2,3/4,0,*gamma[1/2,3])"}) {
        EXPECT_EQ(I(text).str(), text);
        EXPECT_EQ(I(I(text).str()), I(text));
    }
}

TEST(ItineraryText, AcceptsPowerOfTwoDenominators) {
    EXPECT_EQ(I("(0,3/2^3,2,1/2)"), I("(0,3/8,2,1/2)"));
}

TEST(ItineraryText, ReportsErrorPositions) {
    try {
        I("(1,1/3,2,1/2)");
        FAIL() << "non-dyadic star accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 3u);
    }
    for (const char* bad : {"", "3,1/2", "(x,1/2)", "(1)", "(1,1/2,3)", "(1,0)", "(1,3/2)", "(1,1/2", "(-1,1/2)",
                            "(0,*gamma[0,1])", "(0,*gamma[1,0])", "(0,*gamma[1)"}) {
        EXPECT_THROW(I(bad), ParseError) << bad;
    }
}

TEST(Itinerary, FiniteValidatesParameter) {
    EXPECT_THROW(Itinerary::finite({}, 0, Q("0")), std::invalid_argument);
    EXPECT_THROW(Itinerary::finite({}, 0, Q("3/2")), std::invalid_argument);
    EXPECT_NO_THROW(Itinerary::finite({}, 0, Q("1")));
}

TEST(ApplyF, Examples) {
    EXPECT_EQ(apply_f(I("(3,3/10)")), I("(2,3/10)"));
    EXPECT_EQ(apply_f(I("(0,3/8,2,1/2)")), I("(5,1/2)"));
    EXPECT_EQ(apply_f(Itinerary::origin()), Itinerary::origin());
    EXPECT_EQ(apply_f(I("(0,7/10)")), Itinerary::origin());
}

TEST(ApplyF, StarCentreFallsWithItsStar) {
    EXPECT_EQ(apply_f(I("(0,1/2,0,1)")), I("(1,1)"));
    EXPECT_EQ(apply_f(I("(0,1/2)")), Itinerary::origin());
}

TEST(ApplyF, AgreesWithPlainRulesOnRandomItineraries) {
    gen::Rng rng(3);
    for (int i = 0; i < 5000; ++i) {
        const Itinerary it = gen::finite_itinerary(rng, {});
        Plain p = plain(it);
        Itinerary x = it;
        for (int k = 0; k < 40; ++k) {
            step(p);
            x = apply_f(x);
            ASSERT_TRUE(same(p, x)) << it.str() << " after " << k + 1;
        }
    }
}

TEST(IterateF, Examples) {
    EXPECT_EQ(iterate_f(I("(3,1/3)"), 3), I("(0,1/3)"));
    EXPECT_EQ(iterate_f(special_point(Q("1")), 2), Itinerary::lazy({}, 0, {Q("1"), 2}));
    EXPECT_EQ(iterate_f(I("(4,1/2,1,1)"), 0), I("(4,1/2,1,1)"));
}

TEST(IterateF, MatchesRepeatedApplication) {
    gen::Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        const Itinerary it = i % 5 == 0 ? special_point(min(Rational(1), gen::unit_rational(rng, 20) + Rational(1, 40)))
                                        : gen::finite_itinerary(rng, {});
        const auto n = gen::uniform(rng, 0, 200);
        Itinerary x = it;
        for (std::uint64_t k = 0; k < n; ++k) x = apply_f(x);
        ASSERT_EQ(iterate_f(it, n), x) << it.str() << " n=" << n;
    }
}

TEST(TimeToOrigin, Examples) {
    EXPECT_EQ(time_to_origin(Itinerary::origin()), 0u);
    EXPECT_EQ(time_to_origin(I("(7,1/3)")), 8u);
    // (0,1/2,2,r) -> (3,r) -> (2,r) -> (1,r) -> (0,r) -> origin
    EXPECT_EQ(time_to_origin(I("(0,1/2,2,1/3)")), 5u);
}

TEST(TimeToOrigin, RejectsLazy) {
    EXPECT_THROW(time_to_origin(special_point(Q("1"))), std::invalid_argument);
}

TEST(TimeToOrigin, EqualsBoundAndIteration) {
    gen::Rng rng(7);
    for (int i = 0; i < 3000; ++i) {
        const Itinerary it = gen::finite_itinerary(rng, {});
        const std::uint64_t n = time_to_origin(it);
        EXPECT_EQ(n, time_to_origin_bound(it));
        if (n > 0) EXPECT_FALSE(iterate_f(it, n - 1).is_origin()) << it.str();
        EXPECT_TRUE(iterate_f(it, n).is_origin());
        EXPECT_TRUE(iterate_f(it, n + 5).is_origin());
    }
}

TEST(HeadDecrement, IsABijectionWithIncrementInverse) {
    gen::Rng rng(13);
    for (int i = 0; i < 3000; ++i) {
        const Itinerary it = gen::finite_itinerary(rng, {});
        if (it.is_origin()) continue;
        std::vector<Step> steps = it.steps();
        Branch terminal = it.terminal_branch();
        (steps.empty() ? terminal : steps.front().branch) += 1;
        const Itinerary up = Itinerary::finite(steps, terminal, it.param());
        EXPECT_EQ(apply_f(up), it);
    }
}

TEST(SpecialPoint, Tails) {
    const Itinerary x = special_point(Q("1/4"));
    ASSERT_TRUE(x.is_lazy());
    EXPECT_EQ(x.terminal_branch(), 0u);
    EXPECT_EQ(x.tail().next_index, 1u);
    const std::vector<Rational> expected{Q("1/4"), Q("1/8"), Q("1/16"), Q("3/16")};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const Level lv = level_at(x, i);
        EXPECT_EQ(lv.branch, 0u);
        EXPECT_EQ(lv.position, expected[i]);
    }
    EXPECT_EQ(level_at(special_point(Q("1/2")), 3).position, Q("3/8"));
    EXPECT_THROW(special_point(Q("0")), std::invalid_argument);
    EXPECT_THROW(special_point(Q("2")), std::invalid_argument);
}

TEST(SpecialPoint, OrbitNeverReachesOrigin) {
    for (const char* r : {"1", "1/2", "1/3"}) {
        Itinerary x = special_point(Q(r));
        for (int k = 0; k < 10000; ++k) {
            ASSERT_FALSE(x.is_origin());
            x = apply_f(x);
        }
    }
}

TEST(ReturnTimes, Examples) {
    EXPECT_EQ(return_times(Q("1"), 4), (std::vector<std::uint64_t>{2, 5, 8}));
    EXPECT_EQ(return_times(Q("1/2"), 3), (std::vector<std::uint64_t>{2, 5}));
    EXPECT_EQ(return_times(Q("3/4"), 2), (std::vector<std::uint64_t>{gamma_cap_kth(Q("3/4"), 1).level() + 1}));
    EXPECT_THROW(return_times(Q("1"), 1), std::invalid_argument);
}

TEST(ReturnTimes, StatesAreTheShiftedTail) {
    const Rational r = Q("2/3");
    const auto times = return_times(r, 50);
    for (std::size_t i = 0; i < times.size(); ++i) {
        EXPECT_EQ(iterate_f(special_point(r), times[i]), Itinerary::lazy({}, 0, {r, i + 2}));
    }
}

TEST(Itinerary, LazyCanonicalisation) {
    const Rational r = Q("1");
    // (0, b_1) in front of the tail from index 2 is the tail from index 1.
    EXPECT_EQ(Itinerary::lazy({{0, gamma_cap_kth(r, 1)}}, 0, {r, 2}), special_point(r));
    EXPECT_NE(Itinerary::lazy({{1, gamma_cap_kth(r, 1)}}, 0, {r, 2}), special_point(r));
}
