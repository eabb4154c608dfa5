#include "dendro/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace dendro {

std::vector<Itinerary> orbit(const Itinerary& it, std::uint64_t n) {
    if (n < 1) {
        throw std::invalid_argument("orbit length must be at least 1");
    }
    std::vector<Itinerary> out;
    out.reserve(n);
    out.push_back(it);
    while (out.size() < n) {
        out.push_back(apply_f(out.back()));
    }
    return out;
}

OmegaApprox omega_approx(const Itinerary& seed, std::uint64_t skip, std::uint64_t length, const Rational& tail_tol) {
    if (length < 1) {
        throw std::invalid_argument("orbit tail length must be at least 1");
    }
    if (tail_tol.sign() <= 0) {
        throw std::invalid_argument("tail tolerance must be positive");
    }
    std::vector<Itinerary> points;
    Itinerary x = iterate_f(seed, skip);
    for (std::uint64_t k = 0; k < length; ++k) {
        if (x.is_origin() && !points.empty() && points.back().is_origin()) {
            break;  // fixed for good
        }
        points.push_back(x);
        x = apply_f(x);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::string label = "omega[" + seed.str() + ",skip=" + std::to_string(skip) + ",length=" + std::to_string(length) + "]";
    return {seed, skip, length, {std::move(label), std::move(points), Rational(0)}, tail_tol};
}

HausdorffEstimate verify_omega_equals_Dr(const Rational& r, const OmegaRun& run) {
    if (r.sign() <= 0 || r > Rational(1)) {
        throw std::invalid_argument("r must lie in (0,1], got " + r.str());
    }
    const OmegaApprox tail = omega_approx(special_point(r), run.skip, run.length, run.tail_tol);
    const DendriteNet target = build_net_Dr(r, run.eps, run.branch_cutoff);
    return hausdorff(tail.points, target, run.tail_tol);
}

Cylinder::Cylinder(std::vector<Step> prefix, Branch terminal_branch, Rational lo, Rational hi)
    : prefix_(std::move(prefix)), terminal_(terminal_branch), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.sign() < 0 || hi_ > Rational(1) || !(lo_ < hi_)) {
        throw std::invalid_argument("cylinder interval must satisfy 0 <= lo < hi <= 1");
    }
}

namespace {

struct Token {
    std::string text;
    std::size_t position;
};

std::vector<Token> split(std::string_view body, std::size_t offset) {
    std::vector<Token> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
        if (i == body.size() || body[i] == ',') {
            std::string piece;
            for (char c : body.substr(start, i - start)) {
                if (!std::isspace(static_cast<unsigned char>(c))) piece += c;
            }
            out.push_back({piece, offset + start});
            start = i + 1;
        }
    }
    return out;
}

Branch parse_branch(const Token& t) {
    if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw ParseError("expected a branch index", t.position);
    }
    try {
        return std::stoull(t.text);
    } catch (const std::out_of_range&) {
        throw ParseError("branch index too large", t.position);
    }
}

Rational parse_rational(const Token& t) {
    try {
        return Rational::parse(t.text);
    } catch (const std::invalid_argument&) {
        throw ParseError("expected a rational", t.position);
    }
}

}  // namespace

Cylinder Cylinder::parse(std::string_view text) {
    const std::size_t open = text.find('(');
    const std::size_t close = text.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        throw ParseError("cylinder must be enclosed in parentheses", open == std::string_view::npos ? 0 : open);
    }
    if (open != 0) {
        throw ParseError("unexpected text before '('", 0);
    }
    if (close + 1 != text.size()) {
        throw ParseError("unexpected text after ')'", close + 1);
    }
    const std::size_t semi = text.find(';', open);
    if (semi == std::string_view::npos || semi > close) {
        throw ParseError("expected ';' before the interval", close);
    }
    const auto head = split(text.substr(open + 1, semi - open - 1), open + 1);
    const auto interval = split(text.substr(semi + 1, close - semi - 1), semi + 1);
    if (head.size() % 2 == 0) {
        throw ParseError("expected branch,dyadic pairs followed by a terminal branch", open + 1);
    }
    if (interval.size() != 2) {
        throw ParseError("expected lo,hi", semi + 1);
    }
    std::vector<Step> prefix;
    for (std::size_t i = 0; i + 1 < head.size(); i += 2) {
        const Branch b = parse_branch(head[i]);
        const auto d = Dyadic::from_rational(parse_rational(head[i + 1]));
        if (!d) {
            throw ParseError("expected a dyadic in (0,1)", head[i + 1].position);
        }
        prefix.push_back({b, *d});
    }
    try {
        return Cylinder(std::move(prefix), parse_branch(head.back()), parse_rational(interval[0]),
                        parse_rational(interval[1]));
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), semi + 1);
    }
}

bool Cylinder::contains(const Itinerary& it) const {
    const std::size_t k = prefix_.size();
    if (level_count(it) <= k) {
        return false;
    }
    for (std::size_t i = 0; i < k; ++i) {
        const Level lv = level_at(it, i);
        if (lv.branch != prefix_[i].branch || !lv.star || *lv.star != prefix_[i].dyadic) {
            return false;
        }
    }
    const Level last = level_at(it, k);
    return last.branch == terminal_ && lo_ < last.position && last.position < hi_;
}

std::string Cylinder::str() const {
    std::string out = "(";
    for (const Step& s : prefix_) {
        out += std::to_string(s.branch) + "," + s.dyadic.value().str() + ",";
    }
    return out + std::to_string(terminal_) + ";" + lo_.str() + "," + hi_.str() + ")";
}

std::optional<Dyadic> dyadic_in(const Rational& lo, const Rational& hi, unsigned level) {
    if (level < 1 || level > Dyadic::kMaxLevel) {
        return std::nullopt;
    }
    mpz_class m = lo.mul_pow2(level).floor() + 1;
    if (m % 2 == 0) m += 1;
    const Rational candidate(m, mpz_class(1));
    if (!(candidate.mul_pow2(-static_cast<long>(level)) < hi)) {
        return std::nullopt;
    }
    const mpz_class limit = mpz_class(1) << level;
    if (m <= 0 || m >= limit) {
        return std::nullopt;
    }
    return Dyadic(m.get_ui(), level);
}

namespace {

Itinerary target_part(const Cylinder& v) {
    return Itinerary::finite(v.prefix(), v.terminal_branch(), (v.lo() + v.hi()).mul_pow2(-1));
}

// First n with f^n(z) == target, by single steps.
std::uint64_t hitting_time(const Itinerary& z, const Itinerary& target) {
    const std::uint64_t cap = time_to_origin_bound(z);
    Itinerary x = z;
    for (std::uint64_t n = 0; n <= cap; ++n) {
        if (x == target) return n;
        x = apply_f(x);
    }
    throw std::logic_error("orbit of " + z.str() + " never reaches " + target.str());
}

void verify(const Cylinder& u, const Cylinder& v, const Witness& w) {
    if (!u.contains(w.z)) {
        throw std::logic_error("witness " + w.z.str() + " is not in " + u.str());
    }
    const Itinerary image = iterate_f(w.z, w.n);
    if (!v.contains(image)) {
        throw std::logic_error("f^" + std::to_string(w.n) + "(" + w.z.str() + ") = " + image.str() + " is not in " + v.str());
    }
}

// Lowest level carrying a dyadic inside (lo, hi).
unsigned lowest_level(const Rational& lo, const Rational& hi) {
    for (unsigned l = 1; l <= Dyadic::kMaxLevel; ++l) {
        if (dyadic_in(lo, hi, l)) return l;
    }
    throw std::logic_error("interval (" + lo.str() + "," + hi.str() + ") contains no dyadic of level <= 62");
}

}  // namespace

Itinerary mixing_point(const Cylinder& u, const Cylinder& v, const Dyadic& a, std::uint64_t pads) {
    std::vector<Step> steps = u.prefix();
    steps.push_back({u.terminal_branch(), a});
    const Dyadic half(1, 1);
    for (std::uint64_t i = 0; i < pads; ++i) steps.push_back({0, half});
    steps.insert(steps.end(), v.prefix().begin(), v.prefix().end());
    return Itinerary::finite(std::move(steps), v.terminal_branch(), (v.lo() + v.hi()).mul_pow2(-1));
}

Witness connecting_point(const Cylinder& u, const Cylinder& v) {
    const auto a = dyadic_in(u.lo(), u.hi(), lowest_level(u.lo(), u.hi()));
    Witness w{mixing_point(u, v, *a, 0), 0};
    w.n = hitting_time(w.z, target_part(v));
    verify(u, v, w);
    return w;
}

MixingReport mixing_window(const Cylinder& u, const Cylinder& v, std::uint64_t n_min, std::uint64_t window) {
    if (window < 1) {
        throw std::invalid_argument("mixing window must be at least 1");
    }
    MixingReport report;
    report.base = u.terminal_branch() + 1;
    for (const Step& s : u.prefix()) report.base += s.branch + s.dyadic.level() + 1;

    // Levels carrying a dyadic in U's interval; every level from `dense` on does.
    std::vector<unsigned> levels;
    unsigned dense = 1;
    while (dense < Dyadic::kMaxLevel && !(Rational::pow2(1 - static_cast<long>(dense)) < u.hi() - u.lo())) ++dense;
    for (unsigned l = 1; l <= dense; ++l) {
        if (dyadic_in(u.lo(), u.hi(), l)) levels.push_back(l);
    }
    auto choice = [&](std::uint64_t n) -> std::optional<std::pair<unsigned, std::uint64_t>> {
        if (n < report.base) return std::nullopt;
        const std::uint64_t extra = n - report.base;
        for (unsigned l : levels) {
            if (l <= extra && (extra - l) % 2 == 0) return std::pair{l, (extra - l) / 2};
        }
        if (extra > dense && (extra - dense - 1) % 2 == 0) return std::pair{dense + 1, (extra - dense - 1) / 2};
        return std::nullopt;
    };
    // Above base + dense + 1 both parities are reachable through levels dense, dense + 1.
    report.threshold = report.base + dense + 1;
    while (report.threshold > report.base && choice(report.threshold - 1)) --report.threshold;

    for (std::uint64_t n = n_min; n < n_min + window; ++n) {
        const auto c = choice(n);
        if (!c) {
            report.unreachable.push_back(n);
            continue;
        }
        Witness w{mixing_point(u, v, *dyadic_in(u.lo(), u.hi(), c->first), c->second), n};
        if (hitting_time(w.z, target_part(v)) != n) {
            throw std::logic_error("mixing construction missed time " + std::to_string(n) + " for " + w.z.str());
        }
        verify(u, v, w);
        report.witnesses.push_back(std::move(w));
    }
    return report;
}

OmegaSample sample_omega_hyperspace(const std::vector<Itinerary>& seeds, const OmegaSampleParams& params) {
    if (seeds.empty()) {
        throw std::invalid_argument("at least one seed is required");
    }
    OmegaSample out;
    for (const Itinerary& s : seeds) {
        out.approximations.push_back(omega_approx(s, params.skip, params.length, params.tail_tol));
    }
    const std::size_t n = seeds.size();
    out.distances.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const HausdorffEstimate h =
                hausdorff(out.approximations[i].points, out.approximations[j].points, params.tail_tol);
            out.distances[i][j] = out.distances[j][i] = h.value;
            if (h.error_bar > out.error_bar) out.error_bar = h.error_bar;
        }
    }
    return out;
}

}  // namespace dendro
