#include "dendro/acceptance.hpp"

#include "dendro/dynamics.hpp"
#include "dendro/generators.hpp"
#include "dendro/hyperspace.hpp"
#include "dendro/interval.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

namespace dendro {

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (pass) detail << why;
        pass = false;
    }
};

using Check = std::function<void(Outcome&, gen::Rng&)>;

void enumeration(Outcome& o, gen::Rng&) {
    const std::vector<Rational> expected{{1, 2}, {1, 4}, {3, 4}, {1, 8}, {3, 8}, {5, 8}, {7, 8}, {1, 16}};
    for (std::uint64_t n = 1; n <= expected.size(); ++n) {
        if (index_to_dyadic(n).value() != expected[n - 1]) {
            o.fail("a_" + std::to_string(n) + " = " + index_to_dyadic(n).value().str());
        }
    }
    o.detail << "a_1..a_8 exact";
}

void sequence_omega(Outcome& o, gen::Rng&) {
    const Rational step(1, 64);
    const auto full = omega_of_sequence_approx([](std::uint64_t n) { return index_to_dyadic(n).value(); }, 4096, step);
    if (full.hit_grid.size() != 65) {
        o.fail("Γ marks " + std::to_string(full.hit_grid.size()) + " of 65 grid points");
    }
    for (const Rational& r : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        const auto capped =
            omega_of_sequence_approx([&](std::uint64_t k) { return gamma_cap_kth(r, k).value(); }, 4096, step);
        for (long i = 0; i <= 64; ++i) {
            const Rational g(i, 64);
            const bool marked = std::find(capped.hit_grid.begin(), capped.hit_grid.end(), g) != capped.hit_grid.end();
            if (g <= r && !marked) o.fail("r=" + r.str() + ": " + g.str() + " unmarked");
            if (g > r + step && marked) o.fail("r=" + r.str() + ": " + g.str() + " marked");
        }
    }
    o.detail << "full grid marked; [0,r] matched within 1/64 for r=1/4,1/2,3/4";
}

Itinerary bump_head(const Itinerary& it) {
    std::vector<Step> steps = it.steps();
    Branch terminal = it.terminal_branch();
    if (steps.empty()) {
        ++terminal;
    } else {
        ++steps.front().branch;
    }
    return Itinerary::finite(std::move(steps), terminal, it.param());
}

void rewrite_soundness(Outcome& o, gen::Rng& rng) {
    const gen::ItineraryShape shape{5, 20, 6, 64};
    std::uint64_t total = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Itinerary it = gen::finite_itinerary(rng, shape);
        const std::uint64_t predicted = time_to_origin(it);
        Itinerary x = it;
        std::uint64_t n = 0;
        while (!x.is_origin()) {
            x = apply_f(x);
            ++n;
        }
        total += n;
        if (n != predicted) {
            o.fail(it.str() + ": time_to_origin " + std::to_string(predicted) + " vs iteration " + std::to_string(n));
        }
        if (it.is_origin()) continue;
        if (apply_f(bump_head(it)) != it) {
            o.fail("decrement does not invert the head bump at " + it.str());
        }
        const Branch head = it.steps().empty() ? it.terminal_branch() : it.steps().front().branch;
        if (head > 0 && bump_head(apply_f(it)) != it) {
            o.fail("head bump does not invert the decrement at " + it.str());
        }
    }
    o.detail << "10000 itineraries, " << total << " forward steps";
}

void return_time_law(Outcome& o, gen::Rng&) {
    for (const Rational& r : {Rational(1, 2), Rational(1)}) {
        const auto times = return_times(r, 1001);
        std::uint64_t previous = 0;  // m_1
        for (std::uint64_t k = 1; k <= 1000; ++k) {
            const std::uint64_t gap = times[k - 1] - previous;
            const std::uint64_t law = gamma_cap_kth(r, k).level() + 1;
            if (gap != law) {
                o.fail("r=" + r.str() + ", k=" + std::to_string(k) + ": gap " + std::to_string(gap) + " vs " +
                       std::to_string(law));
            }
            previous = times[k - 1];
        }
        o.detail << "r=" << r << ": m_1001=" << previous << "; ";
    }
}

void omega_equals_dr(Outcome& o, gen::Rng&) {
    const Rational bound(1, 16);
    for (const Rational& r : {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
        OmegaRun run;
        const HausdorffEstimate shorter = verify_omega_equals_Dr(r, run);
        run.length = 40000;
        const HausdorffEstimate longer = verify_omega_equals_Dr(r, run);
        if (shorter.value > bound) o.fail("r=" + r.str() + ": residual " + shorter.value.str());
        if (longer.value > shorter.value + run.tail_tol.mul_pow2(1)) {
            o.fail("r=" + r.str() + ": residual grew to " + longer.value.str());
        }
        o.detail << "r=" << r << ": " << shorter.value << " -> " << longer.value << "; ";
    }
}

void arc_profile_law(Outcome& o, gen::Rng&) {
    std::vector<Rational> grid;
    for (long i = 0; i <= 8; ++i) grid.emplace_back(i, 8);
    const ArcProfile profile = arc_profile(grid, Rational(1, 64), 16);
    Rational worst(0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const Rational gap = (profile.distances[i][j] - (grid[i] - grid[j]).abs()).abs();
            worst = max(worst, gap);
            if (gap > profile.resolutions[i] + profile.resolutions[j]) {
                o.fail("H(D_" + grid[i].str() + ", D_" + grid[j].str() + ") = " + profile.distances[i][j].str());
            }
        }
    }
    o.detail << "81 pairs, max |H - |r-s|| = " << worst;
}

void lemma_oracles(Outcome& o, gen::Rng& rng) {
    std::size_t boundary = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = gen::uniform(rng, 4, 6);
        FiniteMetricSpace x = random_metric_space(n, rng);
        x.closure_radius = Rational(static_cast<long>(gen::uniform(rng, 0, 3)));
        std::vector<Subset> us;
        const auto count = gen::uniform(rng, 1, 3);
        for (std::uint64_t i = 0; i < count; ++i) us.push_back(gen::subset(rng, n));
        const ClosureReport report = vietoris_closure_bruteforce(x, us);
        if (!report.equal) {
            o.fail("closure mismatch at " + report.counterexample->str());
        }
        const VietorisNbhd<Subset> nbhd{us};
        for (std::uint32_t bits = 1; bits <= x.all().bits(); ++bits) {
            const Subset a(bits);
            if (vietoris_contains(a, nbhd) || !in_hyperspace_closure(x, us, a)) continue;
            ++boundary;
            const BoundaryWitness w = boundary_element_witness(x, us, a);
            if (!a.contains(w.point) || us[w.index].contains(w.point) ||
                !metric_closure(x, us[w.index]).contains(w.point)) {
                o.fail("invalid witness for " + a.str());
            }
        }
    }
    o.detail << "100 spaces, " << boundary << " boundary witnesses checked";
}

void transitivity(Outcome& o, gen::Rng& rng) {
    std::size_t witnesses = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const Cylinder u = gen::cylinder(rng, 3, 6, 4);
        const Cylinder v = gen::cylinder(rng, 3, 6, 4);
        try {
            connecting_point(u, v);
            const MixingReport m = mixing_window(u, v, 0, 1);
            const MixingReport window = mixing_window(u, v, m.threshold, 10);
            if (window.witnesses.size() != 10) {
                o.fail(u.str() + " -> " + v.str() + ": " + std::to_string(window.unreachable.size()) +
                       " unreachable above threshold");
            }
            witnesses += 1 + window.witnesses.size();
        } catch (const std::exception& e) {
            o.fail(u.str() + " -> " + v.str() + ": " + e.what());
        }
    }
    o.detail << "50 pairs, " << witnesses << " verified witnesses";
}

void tent_suite(Outcome& o, gen::Rng& rng) {
    for (int trial = 0; trial < 100; ++trial) {
        const Rational x = gen::unit_rational(rng, 10000);
        const TentOrbit orb = eventual_period(x, 20001);
        auto iterate = [](Rational y, std::uint64_t n) {
            while (n-- > 0) y = tent(y);
            return y;
        };
        const Rational entry = iterate(x, orb.preperiod);
        bool ok = iterate(entry, orb.period) == entry && orb.cycle.front() == entry;
        Rational y = entry;
        for (std::uint64_t k = 1; k < orb.period && ok; ++k) {
            y = tent(y);
            ok = y != entry;
        }
        if (orb.preperiod > 0) ok = ok && iterate(x, orb.preperiod - 1 + orb.period) != iterate(x, orb.preperiod - 1);
        if (!ok) o.fail("eventual period of " + x.str());
    }
    if (!is_finite_omega_limit({Rational(2, 3)}) || !is_finite_omega_limit({Rational(2, 5), Rational(4, 5)}) ||
        is_finite_omega_limit({Rational(1, 3)})) {
        o.fail("finite ω-limit fixtures");
    }
    for (int trial = 0; trial < 20; ++trial) {
        const IntervalNet b = periodic_orbit_net(gen::unit_rational(rng, 60), 1000);
        Rational y = gen::unit_rational(rng, 60);
        while (std::find(b.points.begin(), b.points.end(), y) != b.points.end()) y = gen::unit_rational(rng, 60);
        if (interior_empty_demo(b.points, y).c_is_omega_limit) {
            o.fail("B ∪ {" + y.str() + "} accepted as an ω-limit set");
        }
    }
    const IntervalNet a{"A", {Rational(2, 3)}, Rational(0)};
    const IntervalNet b{"B", {Rational(2, 5), Rational(4, 5)}, Rational(0)};
    DensitySearch density;
    density.rng_seed = rng();
    const SeparatorPair sep = separation_construct(a, b, Rational(1, 20), density);
    std::vector<IntervalNet> samples;
    while (samples.size() < 20) samples.push_back(periodic_orbit_net(gen::unit_rational(rng, 50), 1000));
    const SeparationReport report = separation_verify(sep, samples);
    if (report.failures > 0 || report.outside_margin() * 100 < 95 * samples.size()) {
        o.fail("separation: " + std::to_string(report.failures) + " failures, " +
               std::to_string(report.margin) + " margin cases");
    }
    o.detail << "100 periods exact; fixtures; 20 demos; separation U=" << report.in_u << " V=" << report.in_v
             << " margin=" << report.margin;
}

void metric_axioms(Outcome& o, gen::Rng& rng) {
    const gen::ItineraryShape shape{5, 20, 6, 64};
    const Rational tol(1, 1024);
    for (int trial = 0; trial < 1000; ++trial) {
        const Itinerary a = gen::finite_itinerary(rng, shape);
        const Itinerary b = gen::finite_itinerary(rng, shape);
        const Itinerary c = gen::finite_itinerary(rng, shape);
        const Rational ab = intrinsic_distance(a, b, tol);
        const Rational bc = intrinsic_distance(b, c, tol);
        const Rational ac = intrinsic_distance(a, c, tol);
        if (ab != intrinsic_distance(b, a, tol)) o.fail("asymmetric at " + a.str() + ", " + b.str());
        if (ac > ab + bc) o.fail("triangle fails at " + a.str() + ", " + b.str() + ", " + c.str());
        if (!intrinsic_distance(a, a, tol).is_zero()) o.fail("d(a,a) != 0 at " + a.str());
        if ((ab.is_zero()) != (a == b)) o.fail("identity of indiscernibles at " + a.str() + ", " + b.str());
    }
    o.detail << "1000 triples exact";
}

struct Criterion {
    int id;
    const char* name;
    double budget;
    Check check;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out, std::uint64_t seed) {
    const std::vector<Criterion> criteria{
        {1, "enumeration fidelity", 0.001, enumeration},
        {2, "omega of the dyadic listing", 1.0, sequence_omega},
        {3, "rewrite soundness", 10.0, rewrite_soundness},
        {4, "return-time law", 10.0, return_time_law},
        {5, "omega(x,f) = D_r", 120.0, omega_equals_dr},
        {6, "arc profile", 30.0, arc_profile_law},
        {7, "finite-space lemma oracles", 30.0, lemma_oracles},
        {8, "transitivity witnesses", 30.0, transitivity},
        {9, "tent-map suite", 60.0, tent_suite},
        {10, "metric axioms", 10.0, metric_axioms},
    };
    std::vector<CriterionResult> results;
    for (const Criterion& c : criteria) {
        gen::Rng rng(seed + static_cast<std::uint64_t>(c.id));
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.check(o, rng);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        CriterionResult r{c.id, c.name, o.pass, o.detail.str(), seconds, c.budget};
        if (seconds > c.budget) {
            r.pass = false;
            r.detail = "over time budget; " + r.detail;
        }
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.3fs / %gs", seconds, c.budget);
        out << (r.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << timing << ") " << r.detail
            << '\n'
            << std::flush;
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace dendro
