#include "dendro/cli.hpp"

#include "dendro/acceptance.hpp"
#include "dendro/dynamics.hpp"
#include "dendro/embedding.hpp"
#include "dendro/generators.hpp"
#include "dendro/interval.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace dendro::cli {

using nlohmann::json;

namespace {

class CheckFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string itinerary;
    std::uint64_t n = 1;
    std::string r;
    std::uint64_t skip = 1000;
    std::uint64_t length = 20000;
    std::string eps = "1/64";
    Branch branch_cutoff = 16;
    unsigned level_cutoff = 0;
    unsigned depth = 1;
    std::string tail_tol = "1/256";
    std::string tolerance = "1/16";
    std::string grid = "0,1/8,1/4,3/8,1/2,5/8,3/4,7/8,1";
    std::string u;
    std::string v;
    std::uint64_t n_min = 0;
    std::uint64_t window = 5;
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 100;
    std::string a;
    std::string b;
    std::string delta = "1/20";
    std::uint64_t samples = 20;
    std::string orbit_seed;
    std::string out;
    std::string config;
};

Rational rational_flag(const std::string& name, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("--" + name + ": not a rational: '" + text + "'");
    }
}

Rational positive_flag(const std::string& name, const std::string& text) {
    Rational x = rational_flag(name, text);
    if (x.sign() <= 0) {
        throw std::invalid_argument("--" + name + " must be positive");
    }
    return x;
}

std::vector<Rational> rational_list(const std::string& name, const std::string& text) {
    std::vector<Rational> out;
    std::stringstream in(text);
    std::string piece;
    while (std::getline(in, piece, ',')) out.push_back(rational_flag(name, piece));
    if (out.empty()) {
        throw std::invalid_argument("--" + name + " needs at least one value");
    }
    return out;
}

std::uint64_t require_seed(const Options& o) {
    if (!o.seed) {
        throw std::invalid_argument("--seed is required for randomized runs");
    }
    return *o.seed;
}

json rationals(const std::vector<Rational>& xs) {
    json out = json::array();
    for (const Rational& x : xs) out.push_back(x.str());
    return out;
}

json witness_json(const Witness& w) {
    return {{"n", w.n}, {"z", w.z.str()}};
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

struct Emitted {
    std::string text;
    bool pass = true;
};

Emitted cmd_iterate(const Options& o) {
    const Itinerary start = Itinerary::parse(o.itinerary);
    std::string text;
    for (const Itinerary& x : orbit(start, o.n + 1)) text += x.str() + "\n";
    return {text};
}

Emitted cmd_verify_omega(const Options& o) {
    const Rational r = rational_flag("r", o.r);
    if (r.sign() <= 0 || r > Rational(1)) {
        throw std::invalid_argument("--r must lie in (0,1]");
    }
    OmegaRun run{o.skip, o.length, positive_flag("eps", o.eps), o.branch_cutoff, positive_flag("tail-tol", o.tail_tol)};
    if (run.length < 1) throw std::invalid_argument("--length must be at least 1");
    const Rational tolerance = positive_flag("tolerance", o.tolerance);
    const HausdorffEstimate h = verify_omega_equals_Dr(r, run);
    const bool ok = h.value <= tolerance;
    json report{{"seed", special_point(r).str()},
                {"params",
                 {{"r", r.str()},
                  {"skip", run.skip},
                  {"length", run.length},
                  {"eps", run.eps.str()},
                  {"branch_cutoff", run.branch_cutoff},
                  {"tail_tol", run.tail_tol.str()},
                  {"tolerance", tolerance.str()}}},
                {"residual", h.value.str()},
                {"forward", h.forward.str()},
                {"backward", h.backward.str()},
                {"error_bar", h.error_bar.str()},
                {"witness_list", json::array()},
                {"verified", ok}};
    return {dump(report), ok};
}

Emitted cmd_arc_profile(const Options& o) {
    const std::vector<Rational> grid = rational_list("grid", o.grid);
    const ArcProfile p = arc_profile(grid, positive_flag("eps", o.eps), o.branch_cutoff);
    bool ok = true;
    std::string csv = "r";
    for (const Rational& s : grid) csv += "," + s.str();
    csv += "\r\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv += grid[i].str();
        for (std::size_t j = 0; j < grid.size(); ++j) {
            csv += "," + p.distances[i][j].str();
            const Rational gap = (p.distances[i][j] - (grid[i] - grid[j]).abs()).abs();
            ok = ok && gap <= p.resolutions[i] + p.resolutions[j];
        }
        csv += "\r\n";
    }
    return {csv, ok};
}

json mixing_json(const MixingReport& m) {
    json ws = json::array();
    for (const Witness& w : m.witnesses) ws.push_back(witness_json(w));
    return {{"threshold", m.threshold}, {"witnesses", ws}, {"unreachable", m.unreachable}};
}

Emitted cmd_transitivity(const Options& o) {
    const Cylinder u = Cylinder::parse(o.u);
    const Cylinder v = Cylinder::parse(o.v);
    if (o.window < 1) throw std::invalid_argument("--window must be at least 1");
    const Witness w = connecting_point(u, v);
    const MixingReport probe = mixing_window(u, v, 0, 1);
    const MixingReport m = mixing_window(u, v, probe.threshold, o.window);
    json report = mixing_json(m);
    report["U"] = u.str();
    report["V"] = v.str();
    report["connecting_point"] = witness_json(w);
    report["verified"] = true;
    return {dump(report)};
}

Emitted cmd_mixing(const Options& o) {
    const Cylinder u = Cylinder::parse(o.u);
    const Cylinder v = Cylinder::parse(o.v);
    if (o.window < 1) throw std::invalid_argument("--window must be at least 1");
    const MixingReport m = mixing_window(u, v, o.n_min, o.window);
    json report = mixing_json(m);
    report["U"] = u.str();
    report["V"] = v.str();
    report["n_min"] = o.n_min;
    report["window"] = o.window;
    report["verified"] = true;
    return {dump(report)};
}

Emitted cmd_tent_separation(const Options& o) {
    gen::Rng rng(require_seed(o));
    const IntervalNet a{"A", rational_list("A", o.a), Rational(0)};
    const IntervalNet b{"B", rational_list("B", o.b), Rational(0)};
    const Rational delta = positive_flag("delta", o.delta);
    DensitySearch density;
    density.rng_seed = rng();
    const SeparatorPair sep = separation_construct(a, b, delta, density);

    std::vector<IntervalNet> samples{a, b};
    while (samples.size() < o.samples + 2) samples.push_back(periodic_orbit_net(gen::unit_rational(rng, 50), 1000));
    const SeparationReport rep = separation_verify(sep, samples);
    json classes = json::array();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        classes.push_back({{"sample", rationals(samples[i].points)}, {"class", to_string(rep.classes[i])}});
    }
    const bool ok = rep.failures == 0 && rep.classes[0] == SeparationClass::in_v &&
                    rep.classes[1] == SeparationClass::in_u && rep.outside_margin() * 100 >= 95 * samples.size();
    json report{{"p", sep.p.str()},
                {"delta", delta.str()},
                {"window", {sep.window.first.str(), sep.window.second.str()}},
                {"cut_points", rationals(sep.cut_points)},
                {"classification", classes},
                {"counts", {{"U", rep.in_u}, {"V", rep.in_v}, {"margin", rep.margin}, {"failures", rep.failures}}},
                {"verified", ok}};
    for (std::size_t i = 0; i < sep.cut_points.size(); ++i) {
        report["r" + std::to_string(i + 1)] = sep.cut_points[i].str();
    }
    return {dump(report), ok};
}

Emitted cmd_lemmas(const Options& o) {
    gen::Rng rng(require_seed(o));
    json failures = json::array();
    std::size_t witnesses = 0;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const std::size_t n = gen::uniform(rng, 4, 6);
        FiniteMetricSpace x = random_metric_space(n, rng);
        x.closure_radius = Rational(static_cast<long>(gen::uniform(rng, 0, 3)));
        std::vector<Subset> us;
        const auto count = gen::uniform(rng, 1, 3);
        for (std::uint64_t i = 0; i < count; ++i) us.push_back(gen::subset(rng, n));
        const ClosureReport c = vietoris_closure_bruteforce(x, us);
        if (!c.equal) failures.push_back({{"trial", t}, {"closure_counterexample", c.counterexample->str()}});
        const VietorisNbhd<Subset> nbhd{us};
        for (std::uint32_t bits = 1; bits <= x.all().bits(); ++bits) {
            const Subset a(bits);
            if (vietoris_contains(a, nbhd) || !in_hyperspace_closure(x, us, a)) continue;
            const BoundaryWitness w = boundary_element_witness(x, us, a);
            ++witnesses;
            if (!a.contains(w.point) || us[w.index].contains(w.point) ||
                !metric_closure(x, us[w.index]).contains(w.point)) {
                failures.push_back({{"trial", t}, {"bad_witness", a.str()}});
            }
        }
    }
    json report{{"trials", o.trials}, {"seed", *o.seed}, {"boundary_witnesses", witnesses}, {"failures", failures}};
    return {dump(report), failures.empty()};
}

Emitted cmd_render(const Options& o) {
    const Rational eps = positive_flag("eps", o.eps);
    Scene scene;
    if (!o.r.empty()) {
        scene.nets.push_back(build_net_Dr(rational_flag("r", o.r), eps, o.branch_cutoff));
    } else {
        scene.nets.push_back(build_net_D_truncated({o.depth, o.branch_cutoff, o.level_cutoff}, eps));
    }
    if (!o.orbit_seed.empty()) {
        scene.orbits.push_back(orbit(Itinerary::parse(o.orbit_seed), std::max<std::uint64_t>(o.n, 1)));
    }
    return {render_svg(scene)};
}

Emitted cmd_suite(const Options& o) {
    std::ostringstream lines;
    const auto results = run_acceptance(lines, require_seed(o));
    const bool ok = std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
    return {lines.str(), ok};
}

// Appends `--key value` for config keys not already given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    for (const auto& [key, value] : read_config(path)) {
        const std::string flag = "--" + key;
        const std::string alias = key == "steps" ? "-n" : flag;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a == alias || a.rfind(flag + "=", 0) == 0 ||
                   (alias != flag && a.rfind(alias, 0) == 0);
        });
        if (!given) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read config file " + path);
    }
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        line = line.substr(0, line.find('#'));
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(number) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") {
            throw std::invalid_argument(path + ":" + std::to_string(number) + ": bad key '" + key + "'");
        }
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact experiments on the universal dendrite and the tent map", "dendro"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "Write the report to this file");
        sub->add_option("--config", o.config, "Flat key = value file; flags take precedence");
    };
    auto omega_flags = [&](CLI::App* sub) {
        sub->add_option("--skip", o.skip, "Orbit burn-in");
        sub->add_option("--length", o.length, "Orbit tail length");
        sub->add_option("--eps", o.eps, "Net spacing");
        sub->add_option("--branch-cutoff", o.branch_cutoff, "Beams 0..J");
        sub->add_option("--tail-tol", o.tail_tol, "Truncation tolerance for lazy points");
    };

    auto* iterate = app.add_subcommand("iterate", "Print an orbit");
    iterate->add_option("itinerary", o.itinerary, "Starting itinerary, e.g. (3,7/10)")->required();
    iterate->add_option("-n,--steps", o.n, "Number of applications of f");
    common(iterate);

    auto* verify = app.add_subcommand("verify-omega", "Hausdorff residual between an orbit tail and D_r");
    verify->add_option("--r", o.r, "Parameter r in (0,1]")->required();
    verify->add_option("--tolerance", o.tolerance, "Largest acceptable residual");
    omega_flags(verify);
    common(verify);

    auto* arc = app.add_subcommand("arc-profile", "CSV matrix of H(D_r, D_s) over a grid");
    arc->add_option("--grid", o.grid, "Comma-separated r values");
    arc->add_option("--eps", o.eps, "Net spacing");
    arc->add_option("--branch-cutoff", o.branch_cutoff, "Beams 0..J");
    common(arc);

    auto* trans = app.add_subcommand("transitivity", "Connecting point and mixing witnesses from U to V");
    trans->add_option("--U", o.u, "Cylinder (n1,a1,...,T;lo,hi)")->required();
    trans->add_option("--V", o.v, "Cylinder (n1,a1,...,T;lo,hi)")->required();
    trans->add_option("--window", o.window, "Consecutive times from the threshold");
    common(trans);

    auto* mixing = app.add_subcommand("mixing", "Witnesses for each n in a window");
    mixing->add_option("--U", o.u, "Cylinder (n1,a1,...,T;lo,hi)")->required();
    mixing->add_option("--V", o.v, "Cylinder (n1,a1,...,T;lo,hi)")->required();
    mixing->add_option("--n-min", o.n_min, "First time");
    mixing->add_option("--window", o.window, "Number of consecutive times");
    common(mixing);

    auto* sep = app.add_subcommand("tent-separation", "Clopen-style separation of two tent-map ω-limit sets");
    sep->add_option("--A", o.a, "Comma-separated points of A")->required();
    sep->add_option("--B", o.b, "Comma-separated points of B")->required();
    sep->add_option("--delta", o.delta, "Window radius around p");
    sep->add_option("--samples", o.samples, "Random periodic orbits to classify");
    sep->add_option("--seed", o.seed, "RNG seed");
    common(sep);

    auto* lemmas = app.add_subcommand("lemmas", "Finite-space closure and boundary oracles");
    lemmas->add_option("--trials", o.trials, "Random spaces");
    lemmas->add_option("--seed", o.seed, "RNG seed");
    common(lemmas);

    auto* render = app.add_subcommand("render", "SVG of a net and optional orbit");
    render->add_option("--r", o.r, "Draw D_r instead of the truncated dendrite");
    render->add_option("--eps", o.eps, "Net spacing");
    render->add_option("--branch-cutoff", o.branch_cutoff, "Beams 0..J");
    render->add_option("--level-cutoff", o.level_cutoff, "Stars at dyadics of level <= L");
    render->add_option("--depth", o.depth, "Beam crossings");
    render->add_option("--orbit", o.orbit_seed, "Itinerary whose orbit is marked");
    render->add_option("-n,--steps", o.n, "Orbit points to mark");
    common(render);

    auto* suite = app.add_subcommand("suite", "Full acceptance battery");
    suite->add_option("--seed", o.seed, "RNG seed");
    common(suite);

    std::vector<std::string> args;
    try {
        args = merge_config(raw_args);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    Emitted result;
    try {
        if (iterate->parsed()) result = cmd_iterate(o);
        else if (verify->parsed()) result = cmd_verify_omega(o);
        else if (arc->parsed()) result = cmd_arc_profile(o);
        else if (trans->parsed()) result = cmd_transitivity(o);
        else if (mixing->parsed()) result = cmd_mixing(o);
        else if (sep->parsed()) result = cmd_tent_separation(o);
        else if (lemmas->parsed()) result = cmd_lemmas(o);
        else if (render->parsed()) result = cmd_render(o);
        else if (suite->parsed()) result = cmd_suite(o);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "check failed: " << e.what() << "\n";
        return kCheckFailed;
    }

    if (o.out.empty()) {
        out << result.text;
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << o.out << "\n";
            return kUsage;
        }
        file << result.text;
    }
    return result.pass ? kOk : kCheckFailed;
}

}  // namespace dendro::cli
