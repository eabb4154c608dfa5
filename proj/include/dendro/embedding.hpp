#pragma once

#include "dendro/geometry.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace dendro {

/// Planar coordinates, for rendering only. Metric verdicts never use these.
struct GeomPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Direction of base beam j: π for B_0, π/2 for B_1, π/2^j otherwise.
double base_angle(Branch j);

/// Embeds a point by following its beams. The star at a dyadic of a beam
/// pointing at angle φ repeats the base pattern compressed by κ 2^-(n+3)
/// (n the carrier branch, κ the carrier star's compression): child beam m
/// points at φ + κ 2^-(n+3) θ_m, i.e. strictly to the left of the carrier.
/// Lazy itineraries are followed for at most `depth_cap` crossings.
GeomPoint realize_planar(const Itinerary& it, std::size_t depth_cap);

struct DisjointnessReport {
    bool pass = true;
    std::size_t segment_count = 0;
    double min_gap = 0.0;  ///< smallest distance between non-adjacent segments
    std::string offending_a;
    std::string offending_b;
};

/// Splits every beam of the truncation at its star centres and checks that
/// segments meet only at shared endpoints, and never overlap there.
DisjointnessReport embedding_disjointness_check(const TruncationParams& params);

struct SvgStyle {
    std::string net_stroke = "#1f3b73";
    double net_stroke_width = 0.004;
    std::string marker_fill = "#c0392b";
    double marker_radius = 0.008;
};

struct Scene {
    std::vector<DendriteNet> nets;
    std::vector<std::vector<Itinerary>> orbits;
};

/// Deterministic SVG 1.1 on the viewport [-1.1, 1.1]^2. Each net is drawn as
/// one polyline per beam (base point through its sorted samples); each orbit
/// point becomes one circle marker.
std::string render_svg(const Scene& scene, const SvgStyle& style = {});

}  // namespace dendro
