#pragma once

#include <map>

#include "taucover/measures.hpp"

namespace taucover {

/// Generalized time function. Strict increase along non-constant future
/// causal chains is validated by sampling before use, never certified.
struct TimeFunction {
    std::string kind;
    std::function<double(const SpacePoint&)> eval;

    static TimeFunction coordinate_time();
    static TimeFunction tabulated(std::function<double(const SpacePoint&)> eval);
};

/// Samples causal chains and checks rho strictly increases along them.
bool validate_time_function(const Space& space, const Region& region, const TimeFunction& rho,
                            std::size_t chains, std::uint64_t seed);

/// Grid graph over a coordinate box plus optional extra nodes. Undirected
/// edges join pairs that are causally related in either direction and lie
/// within the linking radius (3x pitch); edge weight |rho(q) - rho(p)|.
/// Shortest paths upper-bound the null distance and converge from above as
/// the pitch refines.
class CausalPathGraph {
public:
    static CausalPathGraph build(SpaceHandle space, const Region& box, double pitch,
                                 TimeFunction rho, std::vector<SpacePoint> extra_nodes = {});

    const std::vector<SpacePoint>& nodes() const { return nodes_; }
    double pitch() const { return pitch_; }
    double link_radius() const { return link_radius_; }
    const TimeFunction& rho() const { return rho_; }
    const SpaceHandle& space() const { return space_; }
    std::size_t edge_count() const { return heads_.size() / 2; }

    std::size_t nearest(const SpacePoint& p) const;

    /// Dijkstra distances from a node, cached per source. The cache makes
    /// queries non-reentrant; keep one graph per thread.
    const std::vector<double>& distances_from(std::size_t src) const;

    /// Null-distance upper bound between arbitrary points via nearest nodes.
    double distance(const SpacePoint& x, const SpacePoint& y) const;

    /// Max |drho|/d over edges: Lipschitz estimate of rho on the box.
    double rho_lipschitz() const { return rho_lip_; }

    void for_each_edge(const std::function<void(std::size_t, std::size_t, double)>& cb) const;

    struct PathResult {
        double value = 0.0;
        std::vector<std::size_t> path;
    };
    PathResult shortest_path(std::size_t src, std::size_t dst) const;

private:
    SpaceHandle space_;
    TimeFunction rho_;
    double pitch_ = 0.0, link_radius_ = 0.0, rho_lip_ = 0.0;
    std::vector<SpacePoint> nodes_;
    std::vector<std::size_t> offsets_; // CSR adjacency
    std::vector<std::uint32_t> heads_;
    std::vector<double> weights_;
    mutable std::map<std::size_t, std::vector<double>> cache_;
};

struct NullDistanceResult {
    double value = 0.0;
    std::vector<std::size_t> path; // node indices, src..dst
    double pitch = 0.0;
};

/// Shortest piecewise-causal path value between two points (snapped to their
/// nearest graph nodes). Throws std::runtime_error when disconnected at this
/// resolution.
NullDistanceResult null_distance(const CausalPathGraph& graph, const SpacePoint& x,
                                 const SpacePoint& y);

/// Sum of |rho| increments over a piecewise causal node sequence; consecutive
/// points must be causally related in one direction or the other.
double null_length(const Space& space, const TimeFunction& rho,
                   const std::vector<SpacePoint>& curve);

struct DiamondBoundReport {
    std::size_t diamonds = 0;
    std::size_t violations = 0;
    double worst_excess = 0.0;
    double slack = 0.0;
};

/// Lemma-style check: sampled d-hat diameter of each diamond against
/// 2*d-hat(a,b) plus resolution slack (4 * pitch * Lip(rho)).
DiamondBoundReport check_diamond_bound(const CausalPathGraph& graph,
                                       const std::vector<CausalDiamond>& diamonds,
                                       std::size_t member_cap, std::uint64_t seed);

struct BiLipschitzReport {
    double constant = 0.0; // max of max(dhat/d, d/dhat) over sampled pairs
    std::size_t pairs = 0;
    double locality_radius = 0.0;
};

BiLipschitzReport empirical_bilipschitz(const CausalPathGraph& graph, std::size_t n_pairs,
                                        double locality_radius, std::uint64_t seed);

struct NullMeasureReport {
    MeasureEstimate v_mode;
    MeasureEstimate w_mode;
    double gap = 0.0; // |V - W| / max(V, W, eps)
    double box_reference = 0.0;
};

/// Re-runs V- and W-mode estimation with d-hat as the background metric for
/// both the delta constraints and the diameters.
NullMeasureReport measures_under_null_distance(const Space& space, const CausalPathGraph& graph,
                                               const Region& region, double n_exponent,
                                               const std::vector<double>& delta_schedule,
                                               EstimateConfig cfg);

} // namespace taucover
