#include "dendro/generators.hpp"
#include "dendro/geometry.hpp"
#include "dendro/hyperspace.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace dendro;
using dendro::testing::I;
using dendro::testing::Q;

namespace {

// Plain re-derivations over the distance matrix.
Rational oracle_hausdorff(const FiniteMetricSpace& x, Subset a, Subset b) {
    auto directed = [&](Subset from, Subset to) {
        Rational worst(0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!from.contains(i)) continue;
            Rational best(-1);
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (to.contains(j) && (best.sign() < 0 || x.distances[i][j] < best)) best = x.distances[i][j];
            }
            worst = max(worst, best);
        }
        return worst;
    };
    return max(directed(a, b), directed(b, a));
}

Subset oracle_closure(const FiniteMetricSpace& x, Subset u) {
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (u.contains(j) && x.distances[i][j] <= x.closure_radius) bits |= 1u << i;
        }
    }
    return Subset(bits);
}

bool oracle_vietoris(Subset k, const std::vector<Subset>& us) {
    Subset all;
    for (Subset u : us) {
        if (!k.intersects(u)) return false;
        all = all | u;
    }
    return k.subset_of(all);
}

DendriteNet net(std::vector<Itinerary> points) {
    return {"net", std::move(points), Rational(0)};
}

}  // namespace

TEST(TreeHausdorff, AgreesWithBruteForceOnFiniteNets) {
    gen::Rng rng(43);
    const IntrinsicMetric d{Q("1/64")};
    for (int i = 0; i < 300; ++i) {
        std::vector<Itinerary> a, b;
        const auto na = gen::uniform(rng, 1, 12);
        const auto nb = gen::uniform(rng, 1, 12);
        for (std::uint64_t k = 0; k < na; ++k) a.push_back(gen::finite_itinerary(rng, {3, 6, 4, 16}));
        for (std::uint64_t k = 0; k < nb; ++k) b.push_back(gen::finite_itinerary(rng, {3, 6, 4, 16}));
        const HausdorffEstimate h = hausdorff(net(a), net(b), Q("1/64"));
        EXPECT_EQ(h.forward, directed_hausdorff_bruteforce<Itinerary>(a, b, d));
        EXPECT_EQ(h.backward, directed_hausdorff_bruteforce<Itinerary>(b, a, d));
        EXPECT_EQ(h.value, max(h.forward, h.backward));
        EXPECT_EQ(h.error_bar, Q("0"));
    }
}

TEST(TreeHausdorff, LazyPointsStayWithinTheErrorBar) {
    const IntrinsicMetric fine{Rational::pow2(-30)};
    for (const char* rs : {"1", "1/2", "3/4"}) {
        std::vector<Itinerary> a{special_point(Q(rs)), iterate_f(special_point(Q(rs)), 5)};
        std::vector<Itinerary> b{I("(0,1/2)"), I("(3,1/4,1,1)")};
        const HausdorffEstimate h = hausdorff(net(a), net(b), Q("1/256"));
        const Rational truth = hausdorff_bruteforce<Itinerary>(a, b, fine);
        EXPECT_GT(h.error_bar, Q("0"));
        EXPECT_LE(h.error_bar, Q("1/256"));
        EXPECT_LE((h.value - truth).abs(), h.error_bar + Rational::pow2(-28)) << rs;
    }
}

TEST(TreeHausdorff, Examples) {
    const DendriteNet a = net({I("(0,1/2)"), I("(4,1/2,0,1/3)")});
    EXPECT_EQ(hausdorff(a, a, Q("1/8")).value, Q("0"));
    const Itinerary x = I("(2,1/2)");
    const Itinerary y = I("(0,1/4,3,1)");
    const Rational dxy = intrinsic_distance(x, y, Q("1/8"));
    const HausdorffEstimate h = hausdorff(net({x}), net({x, y}), Q("1/8"));
    EXPECT_EQ(h.value, dxy);
    EXPECT_EQ(h.forward, Q("0"));
    EXPECT_EQ(h.backward, dxy);
    EXPECT_THROW(hausdorff(net({}), a, Q("1/8")), std::invalid_argument);
}

TEST(TreeHausdorff, ResolutionsAddToTheErrorBar) {
    const DendriteNet a = build_net_Dr(Q("1/4"), Q("1/64"), 6);
    const DendriteNet b = build_net_Dr(Q("3/4"), Q("1/64"), 6);
    const HausdorffEstimate h = hausdorff(a, b, Q("1/64"));
    EXPECT_EQ(h.error_bar, a.resolution + b.resolution);
    EXPECT_LE((h.value - Q("1/2")).abs(), h.error_bar);
    EXPECT_EQ(h.value, Q("1/2"));
}

TEST(IntervalHausdorff, MatchesBruteForce) {
    gen::Rng rng(47);
    auto d = [](const Rational& a, const Rational& b) { return (a - b).abs(); };
    for (int i = 0; i < 500; ++i) {
        std::vector<Rational> a, b;
        for (auto k = gen::uniform(rng, 1, 15); k > 0; --k) a.push_back(gen::unit_rational(rng, 30));
        for (auto k = gen::uniform(rng, 1, 15); k > 0; --k) b.push_back(gen::unit_rational(rng, 30));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        const HausdorffEstimate h = hausdorff(IntervalNet{"a", a, Q("1/100")}, IntervalNet{"b", b, Q("0")});
        EXPECT_EQ(h.value, hausdorff_bruteforce<Rational>(a, b, d));
        EXPECT_EQ(h.error_bar, Q("1/100"));
    }
}

TEST(Subset, Basics) {
    const Subset s = Subset::of({0, 2, 5});
    EXPECT_EQ(s.bits(), 0b100101u);
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s.elements(), (std::vector<std::size_t>{0, 2, 5}));
    EXPECT_EQ(s.str(), "{0,2,5}");
    EXPECT_TRUE(Subset::of({2}).subset_of(s));
    EXPECT_FALSE(s.intersects(Subset::of({1, 3})));
    EXPECT_EQ(Subset().str(), "{}");
}

TEST(Vietoris, Examples) {
    const VietorisNbhd<Subset> nbhd{{Subset::of({0, 1}), Subset::of({3})}};
    EXPECT_TRUE(vietoris_contains(Subset::of({0, 3}), nbhd));
    EXPECT_TRUE(vietoris_contains(Subset::of({0, 1, 3}), nbhd));
    EXPECT_FALSE(vietoris_contains(Subset::of({0, 1}), nbhd));
    EXPECT_FALSE(vietoris_contains(Subset::of({0, 2, 3}), nbhd));
    EXPECT_THROW(vietoris_contains(Subset(), nbhd), std::invalid_argument);
}

TEST(FiniteSpace, ValidateRejectsNonMetrics) {
    FiniteMetricSpace x = path_metric_space(3, Q("0"));
    EXPECT_NO_THROW(x.validate());
    x.distances[0][2] = Q("3");
    x.distances[2][0] = Q("3");
    EXPECT_THROW(x.validate(), std::invalid_argument);
    FiniteMetricSpace y = path_metric_space(3, Q("0"));
    y.distances[0][1] = Q("2");
    EXPECT_THROW(y.validate(), std::invalid_argument);
    gen::Rng rng(53);
    for (int i = 0; i < 50; ++i) EXPECT_NO_THROW(random_metric_space(gen::uniform(rng, 1, 10), rng).validate());
}

TEST(FiniteSpace, HausdorffMatchesOracle) {
    gen::Rng rng(59);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = gen::uniform(rng, 1, 8);
        const FiniteMetricSpace x = random_metric_space(n, rng);
        const Subset a = gen::subset(rng, n);
        const Subset b = gen::subset(rng, n);
        const Subset c = gen::subset(rng, n);
        EXPECT_EQ(hausdorff(x, a, b), oracle_hausdorff(x, a, b));
        EXPECT_EQ(hausdorff(x, a, a), Q("0"));
        EXPECT_LE(hausdorff(x, a, c), hausdorff(x, a, b) + hausdorff(x, b, c));
    }
    EXPECT_THROW(hausdorff(path_metric_space(3, Q("0")), Subset(), Subset::of({1})), std::invalid_argument);
}

TEST(FiniteSpace, ClosureUsesTheRadius) {
    const FiniteMetricSpace exact = path_metric_space(6, Q("0"));
    EXPECT_EQ(metric_closure(exact, Subset::of({1, 4})), Subset::of({1, 4}));
    const FiniteMetricSpace blurred = path_metric_space(6, Q("1"));
    EXPECT_EQ(metric_closure(blurred, Subset::of({1, 4})), Subset::of({0, 1, 2, 3, 4, 5}));
    EXPECT_EQ(metric_closure(blurred, Subset::of({0})), Subset::of({0, 1}));
    gen::Rng rng(61);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = gen::uniform(rng, 1, 8);
        FiniteMetricSpace x = random_metric_space(n, rng);
        x.closure_radius = Rational(static_cast<long>(gen::uniform(rng, 0, 4)));
        const Subset u = gen::subset(rng, n);
        EXPECT_EQ(metric_closure(x, u), oracle_closure(x, u));
    }
}

TEST(VietorisClosure, DiscreteSpacesAreExact) {
    const FiniteMetricSpace x = path_metric_space(5, Q("0"));
    const std::vector<Subset> us{Subset::of({0, 1}), Subset::of({3})};
    const ClosureReport r = vietoris_closure_bruteforce(x, us);
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.members, 3u);
    EXPECT_EQ(r.closure_members, 3u);
}

TEST(VietorisClosure, PathSpaceWithRadiusOne) {
    const FiniteMetricSpace x = path_metric_space(6, Q("1"));
    const std::vector<Subset> us{Subset::of({0, 1}), Subset::of({3})};
    const ClosureReport r = vietoris_closure_bruteforce(x, us);
    EXPECT_TRUE(r.equal);
    // ⟨{0,1,2},{2,3,4}⟩
    std::size_t expected = 0;
    for (std::uint32_t bits = 1; bits < 64; ++bits) {
        expected += oracle_vietoris(Subset(bits), {Subset::of({0, 1, 2}), Subset::of({2, 3, 4})});
    }
    EXPECT_EQ(r.closure_members, expected);
    EXPECT_TRUE(in_hyperspace_closure(x, us, Subset::of({2})));
    EXPECT_FALSE(in_hyperspace_closure(x, us, Subset::of({5})));
}

TEST(VietorisClosure, MatchesClosedBasisOnRandomSpaces) {
    gen::Rng rng(67);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = gen::uniform(rng, 2, 6);
        FiniteMetricSpace x = random_metric_space(n, rng);
        x.closure_radius = Rational(static_cast<long>(gen::uniform(rng, 0, 3)));
        std::vector<Subset> us, closed;
        for (auto k = gen::uniform(rng, 1, 3); k > 0; --k) {
            us.push_back(gen::subset(rng, n));
            closed.push_back(oracle_closure(x, us.back()));
        }
        for (std::uint32_t bits = 1; bits <= x.all().bits(); ++bits) {
            EXPECT_EQ(in_hyperspace_closure(x, us, Subset(bits)), oracle_vietoris(Subset(bits), closed))
                << Subset(bits).str();
        }
        EXPECT_TRUE(vietoris_closure_bruteforce(x, us).equal);
    }
}

TEST(VietorisClosure, Preconditions) {
    const FiniteMetricSpace big = path_metric_space(13, Q("0"));
    const std::vector<Subset> us{Subset::of({0})};
    EXPECT_THROW(vietoris_closure_bruteforce(big, us), std::length_error);
    const FiniteMetricSpace x = path_metric_space(4, Q("0"));
    const std::vector<Subset> empty_member{Subset()};
    EXPECT_THROW(vietoris_closure_bruteforce(x, empty_member), std::invalid_argument);
    const std::vector<Subset> outside{Subset::of({7})};
    EXPECT_THROW(vietoris_closure_bruteforce(x, outside), std::invalid_argument);
}

TEST(BoundaryWitness, BothCases) {
    const FiniteMetricSpace x = path_metric_space(6, Q("1"));
    const std::vector<Subset> us{Subset::of({0, 1}), Subset::of({3})};
    // {2, 3} meets both closures but misses U_0
    const BoundaryWitness miss = boundary_element_witness(x, us, Subset::of({2, 3}));
    EXPECT_EQ(miss.which_case, 1);
    EXPECT_EQ(miss.point, 2u);
    EXPECT_EQ(miss.index, 0u);
    // {0, 3, 4} meets both but leaves the union
    const BoundaryWitness leave = boundary_element_witness(x, us, Subset::of({0, 3, 4}));
    EXPECT_EQ(leave.which_case, 2);
    EXPECT_EQ(leave.point, 4u);
    EXPECT_EQ(leave.index, 1u);
}

TEST(BoundaryWitness, RejectsSetsOffTheBoundary) {
    const FiniteMetricSpace x = path_metric_space(6, Q("1"));
    const std::vector<Subset> us{Subset::of({0, 1}), Subset::of({3})};
    EXPECT_THROW(boundary_element_witness(x, us, Subset::of({0, 3})), std::invalid_argument);
    EXPECT_THROW(boundary_element_witness(x, us, Subset::of({5})), std::invalid_argument);
}

TEST(BoundaryWitness, RandomSpaces) {
    gen::Rng rng(71);
    std::size_t checked = 0;
    for (int i = 0; i < 80; ++i) {
        const std::size_t n = gen::uniform(rng, 3, 6);
        FiniteMetricSpace x = random_metric_space(n, rng);
        x.closure_radius = Rational(static_cast<long>(gen::uniform(rng, 1, 3)));
        std::vector<Subset> us;
        for (auto k = gen::uniform(rng, 1, 3); k > 0; --k) us.push_back(gen::subset(rng, n));
        for (std::uint32_t bits = 1; bits <= x.all().bits(); ++bits) {
            const Subset a(bits);
            std::vector<Subset> closed;
            for (Subset u : us) closed.push_back(oracle_closure(x, u));
            if (oracle_vietoris(a, us) || !oracle_vietoris(a, closed)) continue;
            const BoundaryWitness w = boundary_element_witness(x, us, a);
            EXPECT_TRUE(a.contains(w.point));
            EXPECT_FALSE(us[w.index].contains(w.point));
            EXPECT_TRUE(closed[w.index].contains(w.point));
            ++checked;
        }
    }
    EXPECT_GT(checked, 50u);
}

TEST(ArcProfile, ThreePoints) {
    const std::vector<Rational> grid{Q("0"), Q("1/2"), Q("1")};
    const ArcProfile p = arc_profile(grid, Q("1/64"), 8);
    ASSERT_EQ(p.distances.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(p.distances[i][i], Q("0"));
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_EQ(p.distances[i][j], p.distances[j][i]);
            const Rational gap = (grid[i] - grid[j]).abs();
            EXPECT_LE((p.distances[i][j] - gap).abs(), p.resolutions[i] + p.resolutions[j]);
            for (std::size_t k = 0; k < 3; ++k) {
                EXPECT_LE(p.distances[i][k], p.distances[i][j] + p.distances[j][k]);
            }
        }
    }
    EXPECT_EQ(p.resolutions[0], Q("0"));
}
