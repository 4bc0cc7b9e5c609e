#pragma once

#include <optional>

#include "taucover/region.hpp"
#include "taucover/space.hpp"

namespace taucover {

struct AxiomCheckConfig {
    std::size_t triples = 1000;
    double tol = 1e-9;          // reverse-triangle tolerance
    std::uint64_t seed = 1;
    std::size_t attempt_factor = 100; // rejection budget = factor * triples
    // lower-semicontinuity spot checks
    std::size_t lsc_pairs = 32;
    double lsc_radius = 0.05;
    int lsc_shrinks = 4;
    std::size_t lsc_probes = 64;
    double lsc_slack_abs = 1e-7;
    double lsc_slack_rate = 10.0; // allowance lsc_slack_abs + rate * radius
};

struct AxiomReport {
    std::size_t triples_requested = 0;
    std::size_t triples_tested = 0;
    double worst_reverse_triangle_violation = 0.0;
    std::size_t relation_violations = 0; // << not in <=, tau>0 xor <<, tau!=0 off <=
    std::size_t lsc_spot_failures = 0;
    bool inconclusive = false; // triple quota not met within the attempt budget
    double tol = 0.0;

    bool pass() const {
        return relation_violations == 0 && lsc_spot_failures == 0 &&
               worst_reverse_triangle_violation <= tol;
    }
};

/// Samples n causal triples x <= y <= z by rejection from the region sampler
/// and records max(tau(x,y)+tau(y,z)-tau(x,z), 0), the relation consistency
/// counts, and lsc spot checks with shrinking neighborhoods. Falling short of
/// the triple quota marks the report inconclusive rather than failed.
AxiomReport check_prelength_axioms(const Space& space, const Region& region,
                                   const AxiomCheckConfig& cfg);

struct CausalityReport {
    std::size_t samples = 0;
    std::size_t chronology_violations = 0; // x << x
    std::size_t causality_violations = 0;  // x != y with x <= y <= x
    bool pass() const { return chronology_violations == 0 && causality_violations == 0; }
};

CausalityReport check_causality_conditions(const Space& space, const Region& region,
                                           std::size_t n, std::uint64_t seed);

struct CausalCurve {
    std::vector<SpacePoint> points;
    bool future_directed = true;
};

/// tau-length over nested dyadic index partitions up to `depth`; the value is
/// nonincreasing in depth by the reverse triangle inequality. Throws
/// std::invalid_argument("not a causal curve") when a consecutive sample pair
/// violates the declared direction.
double tau_length(const Space& space, const CausalCurve& curve, int depth);

} // namespace taucover
