#include "dendro/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace dendro {

double base_angle(Branch j) {
    if (j == 0) return std::numbers::pi;
    if (j == 1) return std::numbers::pi / 2;
    return std::ldexp(std::numbers::pi, -static_cast<int>(std::min<Branch>(j, 1000)));
}

namespace {

// Walks the beams of an itinerary, tracking position, direction and the
// compression of the current star's pattern.
struct Walker {
    double x = 0.0;
    double y = 0.0;
    double scale = 1.0;        // current star scale
    double compression = 1.0;  // angular compression of the current star
    double carrier_angle = 0.0;
    bool nested = false;

    double direction(Branch n) const {
        return nested ? carrier_angle + compression * base_angle(n) : base_angle(n);
    }

    // Travel along beam n to parameter t; if `star_level` > 0, enter the star there.
    void advance(Branch n, double t, unsigned star_level) {
        const double angle = direction(n);
        const double length = scale * std::ldexp(1.0, n <= 1 ? 0 : 1 - static_cast<int>(std::min<Branch>(n, 1000)));
        x += t * length * std::cos(angle);
        y += t * length * std::sin(angle);
        if (star_level > 0) {
            scale = std::ldexp(length, -static_cast<int>(star_level) - 2);
            compression = (nested ? compression : 1.0) * std::ldexp(1.0, -static_cast<int>(std::min<Branch>(n, 1000)) - 3);
            carrier_angle = angle;
            nested = true;
        }
    }
};

}  // namespace

GeomPoint realize_planar(const Itinerary& it, std::size_t depth_cap) {
    if (depth_cap < 1) {
        throw std::invalid_argument("realize_planar needs depth_cap >= 1");
    }
    Walker w;
    const std::size_t n = std::min(level_count(it), depth_cap);
    for (std::size_t i = 0; i < n; ++i) {
        const Level lv = level_at(it, i);
        const bool enter = lv.star.has_value() && i + 1 < n;
        w.advance(lv.branch, lv.position.to_double(), enter ? lv.star->level() : 0);
    }
    return {w.x, w.y};
}

namespace {

struct Segment {
    GeomPoint a;
    GeomPoint b;
    std::string key_a;
    std::string key_b;
};

double point_segment_distance(const GeomPoint& p, const GeomPoint& a, const GeomPoint& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

double orient(const GeomPoint& a, const GeomPoint& b, const GeomPoint& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool segments_cross(const Segment& s, const Segment& t) {
    const double d1 = orient(s.a, s.b, t.a);
    const double d2 = orient(s.a, s.b, t.b);
    const double d3 = orient(t.a, t.b, s.a);
    const double d4 = orient(t.a, t.b, s.b);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double segment_distance(const Segment& s, const Segment& t) {
    if (segments_cross(s, t)) {
        return 0.0;
    }
    return std::min({point_segment_distance(s.a, t.a, t.b), point_segment_distance(s.b, t.a, t.b),
                     point_segment_distance(t.a, s.a, s.b), point_segment_distance(t.b, s.a, s.b)});
}

// Segments sharing endpoint `shared` overlap iff they leave it in the same direction.
bool overlap_at_shared(const GeomPoint& shared, const GeomPoint& p, const GeomPoint& q) {
    const double ux = p.x - shared.x, uy = p.y - shared.y;
    const double vx = q.x - shared.x, vy = q.y - shared.y;
    const double cross = ux * vy - uy * vx;
    const double dot = ux * vx + uy * vy;
    const double scale = std::hypot(ux, uy) * std::hypot(vx, vy);
    return dot > 0 && std::abs(cross) <= 1e-12 * scale;
}

}  // namespace

DisjointnessReport embedding_disjointness_check(const TruncationParams& params) {
    std::vector<Dyadic> centres;
    for (unsigned level = 1; level <= params.level_cutoff; ++level) {
        for (std::uint64_t p = 1; p < (std::uint64_t{1} << level); p += 2) {
            centres.emplace_back(p, level);
        }
    }
    std::sort(centres.begin(), centres.end());

    std::vector<Segment> segments;
    std::vector<Step> prefix;
    const std::string origin_key = Itinerary::origin().str();
    std::function<void(unsigned, const std::string&)> visit = [&](unsigned depth, const std::string& base_key) {
        for (Branch n = 0; n <= params.branch_cutoff; ++n) {
            std::vector<Rational> stops;
            if (depth < params.depth) {
                for (const Dyadic& a : centres) stops.push_back(a.value());
            }
            stops.push_back(Rational(1));
            std::string prev_key = base_key;
            GeomPoint prev = prefix.empty() ? GeomPoint{} : realize_planar(Itinerary::finite(
                std::vector<Step>(prefix.begin(), prefix.end() - 1), prefix.back().branch,
                prefix.back().dyadic.value()), prefix.size() + 1);
            for (const Rational& t : stops) {
                const Itinerary here = Itinerary::finite(prefix, n, t);
                const GeomPoint p = realize_planar(here, prefix.size() + 1);
                segments.push_back({prev, p, prev_key, here.str()});
                prev = p;
                prev_key = here.str();
            }
            if (depth < params.depth) {
                for (const Dyadic& a : centres) {
                    prefix.push_back({n, a});
                    visit(depth + 1, Itinerary::finite(std::vector<Step>(prefix.begin(), prefix.end() - 1), n,
                                                       a.value()).str());
                    prefix.pop_back();
                }
            }
        }
    };
    visit(1, origin_key);

    DisjointnessReport report;
    report.segment_count = segments.size();
    report.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < segments.size(); ++i) {
        for (std::size_t j = i + 1; j < segments.size(); ++j) {
            const Segment& s = segments[i];
            const Segment& t = segments[j];
            bool overlap = false;
            bool adjacent = false;
            for (const auto& [ks, ps, os] : {std::tuple{s.key_a, s.a, s.b}, std::tuple{s.key_b, s.b, s.a}}) {
                for (const auto& [kt, pt, ot] : {std::tuple{t.key_a, t.a, t.b}, std::tuple{t.key_b, t.b, t.a}}) {
                    if (ks == kt) {
                        adjacent = true;
                        overlap = overlap || overlap_at_shared(ps, os, ot);
                    }
                }
            }
            const double gap = adjacent ? std::numeric_limits<double>::infinity() : segment_distance(s, t);
            if (!adjacent) {
                report.min_gap = std::min(report.min_gap, gap);
            }
            if ((overlap || gap <= 0.0) && report.pass) {
                report.pass = false;
                report.offending_a = s.key_a + "--" + s.key_b;
                report.offending_b = t.key_a + "--" + t.key_b;
            }
        }
    }
    if (!std::isfinite(report.min_gap)) {
        report.min_gap = 0.0;
    }
    return report;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

// Key of the beam a finite point lies on: its steps plus terminal branch.
struct BeamKey {
    std::vector<Step> prefix;
    Branch branch;
    friend auto operator<=>(const BeamKey&, const BeamKey&) = default;
};

}  // namespace

std::string render_svg(const Scene& scene, const SvgStyle& style) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.1 -1.1 2.2 2.2\" "
           "width=\"800\" height=\"800\">\n"
        << "<g transform=\"scale(1,-1)\">\n";

    for (const DendriteNet& net : scene.nets) {
        std::map<BeamKey, std::vector<std::pair<Rational, GeomPoint>>> beams;
        for (const Itinerary& p : net.points) {
            if (!p.is_finite()) continue;
            beams[{p.steps(), p.terminal_branch()}].emplace_back(p.param(), realize_planar(p, p.steps().size() + 1));
        }
        out << "<g class=\"net\" data-label=\"" << net.label << "\" fill=\"none\" stroke=\"" << style.net_stroke
            << "\" stroke-width=\"" << fmt(style.net_stroke_width) << "\">\n";
        for (auto& [key, samples] : beams) {
            std::sort(samples.begin(), samples.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            GeomPoint base{};
            if (!key.prefix.empty()) {
                std::vector<Step> parent(key.prefix.begin(), key.prefix.end() - 1);
                base = realize_planar(Itinerary::finite(parent, key.prefix.back().branch,
                                                        key.prefix.back().dyadic.value()),
                                      key.prefix.size());
            }
            out << "<polyline points=\"" << fmt(base.x) << ',' << fmt(base.y);
            for (const auto& [t, p] : samples) {
                out << ' ' << fmt(p.x) << ',' << fmt(p.y);
            }
            out << "\"/>\n";
        }
        out << "</g>\n";
    }

    for (const auto& orbit : scene.orbits) {
        out << "<g class=\"orbit\" fill=\"" << style.marker_fill << "\">\n";
        for (const Itinerary& p : orbit) {
            const GeomPoint g = realize_planar(p, 8);
            out << "<circle cx=\"" << fmt(g.x) << "\" cy=\"" << fmt(g.y) << "\" r=\"" << fmt(style.marker_radius)
                << "\"/>\n";
        }
        out << "</g>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace dendro
