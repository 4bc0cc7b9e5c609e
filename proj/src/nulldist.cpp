#include "taucover/nulldist.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace taucover {

TimeFunction TimeFunction::coordinate_time() {
    return {"coordinate-time", [](const SpacePoint& p) { return p.x[0]; }};
}

TimeFunction TimeFunction::tabulated(std::function<double(const SpacePoint&)> eval) {
    return {"tabulated", std::move(eval)};
}

bool validate_time_function(const Space& space, const Region& region, const TimeFunction& rho,
                            std::size_t chains, std::uint64_t seed) {
    auto pool = region.sample(std::max<std::size_t>(4 * chains, 64), seed);
    Rng rng(seed ^ 0xC0FFEEULL);
    std::size_t found = 0;
    const std::size_t budget = 200 * std::max<std::size_t>(chains, 1);
    for (std::size_t a = 0; a < budget && found < chains; ++a) {
        const SpacePoint& x = pool[rng.index(pool.size())];
        const SpacePoint& y = pool[rng.index(pool.size())];
        if (x.x == y.x || !space.causal_le(x, y)) continue;
        ++found;
        if (!(rho.eval(y) > rho.eval(x))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Graph construction

CausalPathGraph CausalPathGraph::build(SpaceHandle space, const Region& box, double pitch,
                                       TimeFunction rho, std::vector<SpacePoint> extra_nodes) {
    if (!space) throw std::invalid_argument("causal path graph: null space");
    if (pitch <= 0.0) throw std::invalid_argument("causal path graph: pitch must be positive");
    CausalPathGraph g;
    g.space_ = std::move(space);
    g.rho_ = std::move(rho);
    g.pitch_ = pitch;
    g.link_radius_ = 3.0 * pitch + 1e-12;

    const auto& lo = box.lo();
    const auto& hi = box.hi();
    const std::size_t dim = g.space_->dim();
    std::vector<std::size_t> counts(dim);
    for (std::size_t k = 0; k < dim; ++k)
        counts[k] = static_cast<std::size_t>(std::floor((hi[k] - lo[k]) / pitch + 1e-9)) + 1;
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
        std::vector<double> coords(dim);
        for (std::size_t k = 0; k < dim; ++k)
            coords[k] = lo[k] + pitch * static_cast<double>(idx[k]);
        g.nodes_.push_back(SpacePoint{g.space_->id(), std::move(coords)});
        std::size_t k = 0;
        while (k < dim) {
            if (++idx[k] < counts[k]) break;
            idx[k++] = 0;
        }
        if (k == dim) break;
    }
    for (auto& p : extra_nodes) {
        const std::size_t near = g.nearest(p);
        if (g.space_->distance(g.nodes_[near], p) > 1e-12) g.nodes_.push_back(std::move(p));
    }

    // Grid coordinates carry float roundoff, which would drop exactly-null
    // diagonal legs (dx exceeds dt by ~1e-16); a tiny time slack keeps them.
    auto causal_with_slack = [&g](const SpacePoint& p, const SpacePoint& q) {
        if (g.space_->causal_le(p, q)) return true;
        SpacePoint q2 = q;
        q2.x[0] += 1e-9;
        try {
            return g.space_->causal_le(p, q2);
        } catch (const std::exception&) {
            return false;
        }
    };

    const std::size_t n = g.nodes_.size();
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const SpacePoint& p = g.nodes_[i];
            const SpacePoint& q = g.nodes_[j];
            if (g.space_->distance(p, q) > g.link_radius_) continue;
            if (!causal_with_slack(p, q) && !causal_with_slack(q, p)) continue;
            const double w = std::abs(g.rho_.eval(q) - g.rho_.eval(p));
            adj[i].push_back({static_cast<std::uint32_t>(j), w});
            adj[j].push_back({static_cast<std::uint32_t>(i), w});
            const double d = g.space_->distance(p, q);
            if (d > 1e-12) g.rho_lip_ = std::max(g.rho_lip_, w / d);
        }
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + adj[i].size();
    g.heads_.resize(g.offsets_[n]);
    g.weights_.resize(g.offsets_[n]);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t at = g.offsets_[i];
        for (const auto& [h, w] : adj[i]) {
            g.heads_[at] = h;
            g.weights_[at] = w;
            ++at;
        }
    }
    return g;
}

std::size_t CausalPathGraph::nearest(const SpacePoint& p) const {
    std::size_t best = 0;
    double bd = kInfinity;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const double d = space_->distance(nodes_[i], p);
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    return best;
}

const std::vector<double>& CausalPathGraph::distances_from(std::size_t src) const {
    auto it = cache_.find(src);
    if (it != cache_.end()) return it->second;
    std::vector<double> dist(nodes_.size(), kInfinity);
    dist[src] = 0.0;
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (std::size_t e = offsets_[u]; e < offsets_[u + 1]; ++e) {
            const double nd = d + weights_[e];
            if (nd < dist[heads_[e]]) {
                dist[heads_[e]] = nd;
                pq.push({nd, heads_[e]});
            }
        }
    }
    return cache_.emplace(src, std::move(dist)).first->second;
}

double CausalPathGraph::distance(const SpacePoint& x, const SpacePoint& y) const {
    return distances_from(nearest(x))[nearest(y)];
}

void CausalPathGraph::for_each_edge(
    const std::function<void(std::size_t, std::size_t, double)>& cb) const {
    for (std::size_t u = 0; u < nodes_.size(); ++u)
        for (std::size_t e = offsets_[u]; e < offsets_[u + 1]; ++e)
            if (u < heads_[e]) cb(u, heads_[e], weights_[e]);
}

CausalPathGraph::PathResult CausalPathGraph::shortest_path(std::size_t src, std::size_t dst) const {
    std::vector<double> dist(nodes_.size(), kInfinity);
    std::vector<std::uint32_t> prev(nodes_.size(), UINT32_MAX);
    dist[src] = 0.0;
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (u == dst) break;
        if (d > dist[u]) continue;
        for (std::size_t e = offsets_[u]; e < offsets_[u + 1]; ++e) {
            const double nd = d + weights_[e];
            if (nd < dist[heads_[e]]) {
                dist[heads_[e]] = nd;
                prev[heads_[e]] = static_cast<std::uint32_t>(u);
                pq.push({nd, heads_[e]});
            }
        }
    }
    PathResult res;
    res.value = dist[dst];
    if (std::isfinite(res.value)) {
        for (std::size_t at = dst;; at = prev[at]) {
            res.path.push_back(at);
            if (at == src) break;
            if (prev[at] == UINT32_MAX) break;
        }
        std::reverse(res.path.begin(), res.path.end());
    }
    return res;
}

NullDistanceResult null_distance(const CausalPathGraph& graph, const SpacePoint& x,
                                 const SpacePoint& y) {
    const std::size_t s = graph.nearest(x), t = graph.nearest(y);
    auto res = graph.shortest_path(s, t);
    if (!std::isfinite(res.value))
        throw std::runtime_error(
            "null_distance: endpoints disconnected at this resolution (no piecewise causal "
            "chain in the sampled graph)");
    return {res.value, std::move(res.path), graph.pitch()};
}

double null_length(const Space& space, const TimeFunction& rho,
                   const std::vector<SpacePoint>& curve) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const SpacePoint& p = curve[i];
        const SpacePoint& q = curve[i + 1];
        if (!space.causal_le(p, q) && !space.causal_le(q, p))
            throw std::invalid_argument("null_length: non-causal consecutive pair");
        sum += std::abs(rho.eval(q) - rho.eval(p));
    }
    return sum;
}

DiamondBoundReport check_diamond_bound(const CausalPathGraph& graph,
                                       const std::vector<CausalDiamond>& diamonds,
                                       std::size_t member_cap, std::uint64_t seed) {
    DiamondBoundReport rep;
    rep.slack = 4.0 * graph.pitch() * std::max(graph.rho_lipschitz(), 1.0);
    const Space& space = *graph.space();
    (void)seed; // members are thinned deterministically
    for (const auto& d : diamonds) {
        ++rep.diamonds;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < graph.nodes().size(); ++i)
            if (diamond_member(space, d, graph.nodes()[i])) members.push_back(i);
        if (members.size() > member_cap) {
            // deterministic thinning
            std::vector<std::size_t> keep;
            for (std::size_t k = 0; k < member_cap; ++k)
                keep.push_back(members[(k * members.size()) / member_cap]);
            members = std::move(keep);
        }
        double diam = 0.0;
        for (std::size_t a : members) {
            const auto& dist = graph.distances_from(a);
            for (std::size_t b : members)
                if (std::isfinite(dist[b])) diam = std::max(diam, dist[b]);
        }
        const double bound = 2.0 * graph.distance(d.a, d.b) + rep.slack;
        const double excess = diam - bound;
        rep.worst_excess = std::max(rep.worst_excess, excess);
        if (excess > 0.0) ++rep.violations;
    }
    return rep;
}

BiLipschitzReport empirical_bilipschitz(const CausalPathGraph& graph, std::size_t n_pairs,
                                        double locality_radius, std::uint64_t seed) {
    BiLipschitzReport rep;
    rep.locality_radius = locality_radius;
    const Space& space = *graph.space();
    Rng rng(seed);
    const auto& nodes = graph.nodes();
    const std::size_t budget = 64 * std::max<std::size_t>(n_pairs, 1);
    for (std::size_t k = 0; k < budget && rep.pairs < n_pairs; ++k) {
        const std::size_t i = rng.index(nodes.size());
        const std::size_t j = rng.index(nodes.size());
        if (i == j) continue;
        const double d = space.distance(nodes[i], nodes[j]);
        // below ~4 pitches the additive zigzag overhead dominates the ratio
        if (d > locality_radius || d < 4.0 * graph.pitch()) continue;
        const double dh = graph.distances_from(i)[j];
        if (!std::isfinite(dh) || dh <= 0.0) continue;
        rep.constant = std::max(rep.constant, std::max(dh / d, d / dh));
        ++rep.pairs;
    }
    return rep;
}

NullMeasureReport measures_under_null_distance(const Space& space, const CausalPathGraph& graph,
                                               const Region& region, double n_exponent,
                                               const std::vector<double>& delta_schedule,
                                               EstimateConfig cfg) {
    validate_schedule(delta_schedule);
    if (graph.pitch() >= delta_schedule.back())
        throw std::invalid_argument(
            "measures_under_null_distance: graph resolution must be finer than min delta");
    MetricOverride ov;
    ov.dist = [&graph](const SpacePoint& a, const SpacePoint& b) { return graph.distance(a, b); };
    ov.diam_factor = 2.0; // diam_{d-hat}(J(a,b)) <= 2 d-hat(a,b)
    cfg.metric = &ov;
    NullMeasureReport rep;
    rep.v_mode = estimate_measure(space, region, n_exponent, CoverMode::V, delta_schedule, cfg);
    rep.w_mode = estimate_measure(space, region, n_exponent, CoverMode::W, delta_schedule, cfg);
    const double v = rep.v_mode.value, w = rep.w_mode.value;
    rep.gap = std::abs(v - w) / std::max({v, w, 1e-12});
    rep.box_reference = region.box_measure();
    return rep;
}

} // namespace taucover
