#include "dendro/hyperspace.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace dendro {

namespace {

// Smallest subtree of the dendrite spanning the origin and a set of finite
// points. Vertices are the origin plus every distinct (beam, parameter) stop
// visited by an inserted point; star centres are the stops they hang from.
class SpanningTree {
public:
    SpanningTree() { vertices_.push_back({0, Rational(0)}); }

    std::size_t insert(const Itinerary& point) {
        std::size_t v = 0;
        Rational scale(1);
        const std::size_t n = level_count(point);
        for (std::size_t i = 0; i < n; ++i) {
            const Level lv = level_at(point, i);
            const Rational length = scale * scheme::base_length(lv.branch);
            auto [it, fresh] = beam_index_.try_emplace({v, lv.branch}, beams_.size());
            if (fresh) {
                beams_.push_back({v, length, {}});
            }
            Beam& beam = beams_[it->second];
            auto [stop, created] = beam.stops.try_emplace(lv.position, vertices_.size());
            if (created) {
                vertices_.push_back({0, Rational(0)});
            }
            v = stop->second;
            if (lv.star) {
                scale = scheme::star_scale(lv.star->level(), length);
            }
        }
        return v;
    }

    void finalize() {
        std::vector<std::vector<std::size_t>> children(vertices_.size());
        for (const Beam& beam : beams_) {
            std::size_t prev = beam.base;
            Rational prev_pos(0);
            for (const auto& [pos, vid] : beam.stops) {
                vertices_[vid].parent = prev;
                vertices_[vid].weight = (pos - prev_pos) * beam.length;
                children[prev].push_back(vid);
                prev = vid;
                prev_pos = pos;
            }
        }
        order_.clear();
        order_.reserve(vertices_.size());
        order_.push_back(0);
        for (std::size_t i = 0; i < order_.size(); ++i) {
            for (std::size_t c : children[order_[i]]) order_.push_back(c);
        }
    }

    // Distance from every vertex to the nearest marked vertex.
    std::vector<Rational> nearest(const std::vector<char>& marked) const {
        const std::size_t n = vertices_.size();
        std::vector<Rational> best(n);
        std::vector<char> known(marked.begin(), marked.end());
        for (std::size_t k = n; k-- > 1;) {
            const std::size_t v = order_[k];
            if (!known[v]) continue;
            const std::size_t p = vertices_[v].parent;
            Rational candidate = best[v] + vertices_[v].weight;
            if (!known[p] || candidate < best[p]) {
                best[p] = std::move(candidate);
                known[p] = 1;
            }
        }
        for (std::size_t k = 1; k < n; ++k) {
            const std::size_t v = order_[k];
            const std::size_t p = vertices_[v].parent;
            Rational via_parent = best[p] + vertices_[v].weight;
            if (!known[v] || via_parent < best[v]) {
                best[v] = std::move(via_parent);
                known[v] = 1;
            }
        }
        return best;
    }

    std::size_t size() const { return vertices_.size(); }

private:
    struct Vertex {
        std::size_t parent;
        Rational weight;  // edge length to parent
    };
    struct Beam {
        std::size_t base;
        Rational length;
        std::map<Rational, std::size_t> stops;
    };

    std::vector<Vertex> vertices_;
    std::vector<Beam> beams_;
    std::map<std::pair<std::size_t, Branch>, std::size_t> beam_index_;
    std::vector<std::size_t> order_;
};

Rational directed_on_tree(const SpanningTree& tree, const std::vector<std::size_t>& from,
                          const std::vector<std::size_t>& to) {
    std::vector<char> marked(tree.size(), 0);
    for (std::size_t v : to) marked[v] = 1;
    const std::vector<Rational> dist = tree.nearest(marked);
    Rational worst(0);
    for (std::size_t v : from) {
        if (dist[v] > worst) worst = dist[v];
    }
    return worst;
}

}  // namespace

HausdorffEstimate hausdorff(const DendriteNet& a, const DendriteNet& b, const Rational& tail_tol) {
    if (a.points.empty() || b.points.empty()) {
        throw std::invalid_argument("Hausdorff distance of an empty net");
    }
    SpanningTree tree;
    Rational truncation(0);
    auto place = [&](const DendriteNet& net) {
        std::vector<std::size_t> ids;
        ids.reserve(net.points.size());
        for (const Itinerary& p : net.points) {
            Truncation t = truncate(p, tail_tol);
            if (t.error > truncation) truncation = t.error;
            ids.push_back(tree.insert(t.point));
        }
        return ids;
    };
    const auto ids_a = place(a);
    const auto ids_b = place(b);
    tree.finalize();

    HausdorffEstimate out;
    out.forward = directed_on_tree(tree, ids_a, ids_b);
    out.backward = directed_on_tree(tree, ids_b, ids_a);
    out.value = max(out.forward, out.backward);
    out.error_bar = a.resolution + b.resolution + truncation;
    return out;
}

HausdorffEstimate hausdorff(const IntervalNet& a, const IntervalNet& b) {
    if (a.points.empty() || b.points.empty()) {
        throw std::invalid_argument("Hausdorff distance of an empty net");
    }
    auto directed = [](std::vector<Rational> from, std::vector<Rational> to) {
        std::sort(to.begin(), to.end());
        Rational worst(0);
        for (const Rational& x : from) {
            auto it = std::lower_bound(to.begin(), to.end(), x);
            Rational best = (it == to.end()) ? x - to.back() : *it - x;
            if (it != to.begin()) best = min(best, x - *std::prev(it));
            if (best > worst) worst = best;
        }
        return worst;
    };
    HausdorffEstimate out;
    out.forward = directed(a.points, b.points);
    out.backward = directed(b.points, a.points);
    out.value = max(out.forward, out.backward);
    out.error_bar = a.resolution + b.resolution;
    return out;
}

Subset Subset::of(std::initializer_list<std::size_t> points) {
    std::uint32_t bits = 0;
    for (std::size_t p : points) {
        if (p >= 32) throw std::out_of_range("Subset supports at most 32 points");
        bits |= 1u << p;
    }
    return Subset(bits);
}

std::vector<std::size_t> Subset::elements() const {
    std::vector<std::size_t> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
}

std::string Subset::str() const {
    std::string out = "{";
    bool first = true;
    for (std::size_t p : elements()) {
        if (!first) out += ',';
        out += std::to_string(p);
        first = false;
    }
    return out + "}";
}

bool vietoris_contains(Subset k, const VietorisNbhd<Subset>& nbhd) {
    if (k.empty()) {
        throw std::invalid_argument("Vietoris membership of an empty set");
    }
    Subset cover;
    for (Subset u : nbhd.members) {
        if (!k.intersects(u)) return false;
        cover = cover | u;
    }
    return k.subset_of(cover);
}

void FiniteMetricSpace::validate() const {
    const std::size_t n = size();
    if (n == 0 || n > 32) {
        throw std::invalid_argument("finite metric space needs 1..32 points");
    }
    if (distances.size() != n) {
        throw std::invalid_argument("distance matrix has wrong shape");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (distances[i].size() != n) throw std::invalid_argument("distance matrix has wrong shape");
        if (!distances[i][i].is_zero()) throw std::invalid_argument("non-zero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && distances[i][j].sign() <= 0) throw std::invalid_argument("distinct points at distance 0");
            if (distances[i][j] != distances[j][i]) throw std::invalid_argument("asymmetric distances");
            for (std::size_t k = 0; k < n; ++k) {
                if (distances[i][k] > distances[i][j] + distances[j][k]) {
                    throw std::invalid_argument("triangle inequality fails");
                }
            }
        }
    }
    if (closure_radius.sign() < 0) {
        throw std::invalid_argument("closure radius must be non-negative");
    }
}

FiniteMetricSpace path_metric_space(std::size_t n, const Rational& closure_radius) {
    FiniteMetricSpace x;
    x.closure_radius = closure_radius;
    x.distances.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        x.labels.push_back("p" + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            x.distances[i][j] = Rational(static_cast<long>(i > j ? i - j : j - i));
        }
    }
    return x;
}

FiniteMetricSpace random_metric_space(std::size_t n, std::mt19937_64& rng) {
    FiniteMetricSpace x;
    x.distances.assign(n, std::vector<Rational>(n));
    std::vector<std::vector<long>> d(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        x.labels.push_back("x" + std::to_string(i));
        for (std::size_t j = i + 1; j < n; ++j) {
            d[i][j] = d[j][i] = 1 + static_cast<long>(rng() % 6);
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x.distances[i][j] = Rational(d[i][j]);
    return x;
}

Subset metric_closure(const FiniteMetricSpace& x, Subset u) {
    std::uint32_t bits = 0;
    const auto members = u.elements();
    for (std::size_t p = 0; p < x.size(); ++p) {
        for (std::size_t q : members) {
            if (x.distances[p][q] <= x.closure_radius) {
                bits |= 1u << p;
                break;
            }
        }
    }
    return Subset(bits);
}

Rational hausdorff(const FiniteMetricSpace& x, Subset a, Subset b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("Hausdorff distance of an empty subset");
    }
    const auto ea = a.elements();
    const auto eb = b.elements();
    auto d = [&](std::size_t p, std::size_t q) { return x.distances[p][q]; };
    return hausdorff_bruteforce<std::size_t>(ea, eb, d);
}

namespace {

// Hausdorff comparisons over all subset pairs, on integer ranks of the
// distances. H(A,B) <= η iff rank-H(A,B) <= rank(η) since ranks are monotone.
class RankedSpace {
public:
    explicit RankedSpace(const FiniteMetricSpace& x) : n_(x.size()), rank_(n_ * n_) {
        std::vector<Rational> values;
        for (const auto& row : x.distances) values.insert(values.end(), row.begin(), row.end());
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                rank_[i * n_ + j] = static_cast<int>(
                    std::lower_bound(values.begin(), values.end(), x.distances[i][j]) - values.begin());
            }
        }
        radius_rank_ = static_cast<int>(std::upper_bound(values.begin(), values.end(), x.closure_radius) -
                                        values.begin()) - 1;
    }

    bool within_radius(Subset a, Subset b) const {
        return directed_rank(a, b) <= radius_rank_ && directed_rank(b, a) <= radius_rank_;
    }

private:
    int directed_rank(Subset from, Subset to) const {
        int worst = 0;
        for (std::size_t p : from.elements()) {
            int best = 1 << 30;
            for (std::size_t q : to.elements()) best = std::min(best, rank_[p * n_ + q]);
            worst = std::max(worst, best);
            if (worst > radius_rank_) return worst;
        }
        return worst;
    }

    std::size_t n_;
    std::vector<int> rank_;
    int radius_rank_ = 0;
};

void check_enumerable(const FiniteMetricSpace& x, std::span<const Subset> us) {
    if (x.size() > FiniteMetricSpace::kMaxEnumerated) {
        throw std::length_error("hyperspace enumeration capped at " +
                                std::to_string(FiniteMetricSpace::kMaxEnumerated) + " points");
    }
    if (us.empty()) {
        throw std::invalid_argument("Vietoris neighbourhood needs at least one member");
    }
    for (Subset u : us) {
        if (u.empty() || !u.subset_of(x.all())) {
            throw std::invalid_argument("Vietoris members must be non-empty subsets of the space");
        }
    }
}

std::vector<Subset> vietoris_members(const FiniteMetricSpace& x, const VietorisNbhd<Subset>& nbhd) {
    std::vector<Subset> out;
    for (std::uint32_t bits = 1; bits <= x.all().bits(); ++bits) {
        if (vietoris_contains(Subset(bits), nbhd)) out.emplace_back(bits);
    }
    return out;
}

}  // namespace

bool in_hyperspace_closure(const FiniteMetricSpace& x, std::span<const Subset> us, Subset a) {
    check_enumerable(x, us);
    const RankedSpace ranked(x);
    const auto members = vietoris_members(x, {std::vector<Subset>(us.begin(), us.end())});
    return std::any_of(members.begin(), members.end(), [&](Subset k) { return ranked.within_radius(a, k); });
}

ClosureReport vietoris_closure_bruteforce(const FiniteMetricSpace& x, std::span<const Subset> us) {
    check_enumerable(x, us);
    const RankedSpace ranked(x);
    const VietorisNbhd<Subset> nbhd{std::vector<Subset>(us.begin(), us.end())};
    const auto members = vietoris_members(x, nbhd);

    VietorisNbhd<Subset> closed;
    for (Subset u : us) closed.members.push_back(metric_closure(x, u));

    ClosureReport report;
    report.members = members.size();
    for (std::uint32_t bits = 1; bits <= x.all().bits(); ++bits) {
        const Subset a(bits);
        const bool direct =
            std::any_of(members.begin(), members.end(), [&](Subset k) { return ranked.within_radius(a, k); });
        const bool via_closures = vietoris_contains(a, closed);
        if (direct) ++report.closure_members;
        if (direct != via_closures && report.equal) {
            report.equal = false;
            report.counterexample = a;
        }
    }
    return report;
}

BoundaryWitness boundary_element_witness(const FiniteMetricSpace& x, std::span<const Subset> us, Subset a) {
    const VietorisNbhd<Subset> nbhd{std::vector<Subset>(us.begin(), us.end())};
    if (a.empty() || vietoris_contains(a, nbhd) || !in_hyperspace_closure(x, us, a)) {
        throw std::invalid_argument("A not in the boundary");
    }
    // Case 1: A misses some U_j; it still meets cl(U_j).
    for (std::size_t j = 0; j < us.size(); ++j) {
        if (!a.intersects(us[j])) {
            const Subset hit = a & metric_closure(x, us[j]);
            if (hit.empty()) {
                throw std::logic_error("closure of the Vietoris set misses cl(U_j) for " + a.str());
            }
            return {hit.elements().front(), j, 1};
        }
    }
    // Case 2: some point of A lies outside every U_i but inside some cl(U_j).
    Subset cover;
    for (Subset u : us) cover = cover | u;
    const Subset outside = a.minus(cover);
    for (std::size_t p : outside.elements()) {
        for (std::size_t j = 0; j < us.size(); ++j) {
            if (metric_closure(x, us[j]).contains(p)) {
                return {p, j, 2};
            }
        }
    }
    throw std::logic_error("no boundary witness for " + a.str());
}

ArcProfile arc_profile(std::span<const Rational> grid, const Rational& eps, Branch branch_cutoff) {
    ArcProfile out;
    out.grid.assign(grid.begin(), grid.end());
    std::vector<DendriteNet> nets;
    for (const Rational& r : grid) {
        nets.push_back(build_net_Dr(r, eps, branch_cutoff));
        out.resolutions.push_back(nets.back().resolution);
    }
    const std::size_t n = nets.size();
    out.distances.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out.distances[i][j] = out.distances[j][i] = hausdorff(nets[i], nets[j], eps).value;
        }
    }
    return out;
}

}  // namespace dendro
