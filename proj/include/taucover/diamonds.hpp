#pragma once

#include "taucover/minkowski.hpp"
#include "taucover/region.hpp"
#include "taucover/space.hpp"
#include "taucover/warped.hpp"

namespace taucover {

/// Normalization omega_N = pi^((N-1)/2) / (N Gamma((N+1)/2) 2^(N-1)), N > 0.
double omega(double n);

/// omega_N * tau^N with saturation at tau = infinity; 0 for the empty sentinel.
double rho_cost(double tau, double n);

enum class DiamKind { Exact, UpperBound, SampledLower };

struct CausalDiamond {
    SpacePoint a, b;
    double tau = 0.0;
    double cost = 0.0; // rho_N at the N the diamond was built for
    double diam = 0.0;
    DiamKind diam_kind = DiamKind::SampledLower;
};

/// Builds the diamond record with cached tau and cost; throws
/// std::invalid_argument unless a <= b.
CausalDiamond make_diamond(const Space& space, SpacePoint a, SpacePoint b, double n);

inline bool diamond_member(const Space& space, const CausalDiamond& d, const SpacePoint& p) {
    return space.causal_le(d.a, p) && space.causal_le(p, d.b);
}

/// Exact Euclidean diameter of J(a,b) in Minkowski space. Equals the vertex
/// distance |b-a|: projecting any member pair onto their spatial separation
/// direction reduces to the 2D case, where J(a,b) is a rectangle in null
/// coordinates with diagonal |b-a|. Validated against dense sampling.
double minkowski_diamond_diameter(const MinkowskiSpace& space, const SpacePoint& a,
                                  const SpacePoint& b);

/// Max pairwise distance over n membership-filtered box samples of J(a,b);
/// a lower bound on the true diameter. Throws when no interior samples are
/// found. `metric` defaults to the space's own distance.
double diamond_diameter_sampled(const Space& space, const CausalDiamond& d, std::size_t n,
                                std::uint64_t seed,
                                const std::function<double(const SpacePoint&, const SpacePoint&)>&
                                    metric = {});

struct SliceContainmentReport {
    std::size_t members_tested = 0;
    std::size_t violations = 0;
    double worst_excess = 0.0; // max of d - allowed radius over members
    bool pass() const { return violations == 0; }
};

/// Checks every sampled member (t, r) of J(p,q) against the slice bounds
/// t0 <= t <= t1, d(pbar,r) <= (t-t0)/m_{t0,t}, d(qbar,r) <= (t1-t)/m_{t,t1},
/// where m is the warp minimum on the subinterval.
SliceContainmentReport warped_slice_containment_check(const WarpedProductSpace& space,
                                                      const SpacePoint& p, const SpacePoint& q,
                                                      std::size_t samples, std::uint64_t seed);

enum class CoverMode { V, W };

/// Optional metric replacement for the delta-constraints (null-distance
/// estimation): W uses dist(a,b) < delta, V uses diam_factor*dist(a,b) < delta
/// as the sound diameter bound.
struct MetricOverride {
    std::function<double(const SpacePoint&, const SpacePoint&)> dist;
    double diam_factor = 2.0;
};

struct DiamondFamily {
    std::vector<CausalDiamond> diamonds;
    CoverMode mode = CoverMode::V;
    double delta = 0.0;
    double n_exponent = 0.0;    // the N the costs were built with
    double base_halfheight = 0; // coarsest scale h0
    int scales = 0;
};

struct LatticeOptions {
    int scales = 3;
    double kappa = 6.0;     // min expected ground samples per tile
    double guard = 0.999;   // strictness guard on the delta constraint
    std::size_t ground_hint = 10000;
    std::size_t candidate_cap = 2'000'000;
};

/// Vertical vertex pairs a=(t-h,x), b=(t+h,x) on snapped lattices at dyadic
/// scales h0/2^s; the pitch is tuned so the mode's delta-constraint holds for
/// every emitted diamond and the lattice covers the region box. Degenerate
/// box axes get edge-aligned disjoint tilings. Supports Minkowski and warped
/// products over Euclidean bases.
DiamondFamily generate_lattice_family(const Space& space, const Region& region, double delta,
                                      CoverMode mode, double n_exponent,
                                      const LatticeOptions& opts = {},
                                      const MetricOverride* override_metric = nullptr);

/// Robustness-study generator: random vertex pairs with random spatial offset
/// directions, filtered by the mode's delta constraint.
DiamondFamily generate_random_family(const Space& space, const Region& region, double delta,
                                     CoverMode mode, double n_exponent, std::size_t count,
                                     std::uint64_t seed);

} // namespace taucover
