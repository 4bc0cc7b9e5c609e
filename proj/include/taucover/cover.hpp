#pragma once

#include "taucover/diamonds.hpp"
#include "taucover/region.hpp"

namespace taucover {

/// Feasibility failure carrying the first uncovered ground point.
class InfeasibleCover : public std::runtime_error {
public:
    InfeasibleCover(std::string what, SpacePoint point)
        : std::runtime_error(std::move(what)), uncovered(std::move(point)) {}
    SpacePoint uncovered;
};

/// A weighted set-cover instance over ground-sample points and candidate
/// diamonds; covered-sample bitsets are precomputed per candidate.
struct CoverInstance {
    std::size_t n_ground = 0;
    std::size_t words = 0;
    std::vector<double> cost;                // per candidate
    std::vector<std::uint64_t> bits;         // candidate-major bitsets
    std::vector<std::uint32_t> cover_counts; // popcounts
    bool feasible = true;
    std::size_t first_uncovered = 0; // index into ground when infeasible
    CoverMode mode = CoverMode::V;
    double delta = 0.0;

    const std::uint64_t* row(std::size_t c) const { return bits.data() + c * words; }
    std::size_t candidates() const { return cost.size(); }

    /// Recost candidates for a different exponent N (tau list supplied).
    void recost(const std::vector<double>& taus, double n);
};

/// Membership bitsets by diamond membership over the ground sample.
/// Candidates covering nothing are dropped. taus_out (optional) receives the
/// cached tau of each kept candidate, aligned with instance columns.
CoverInstance build_cover_instance(const Space& space, const std::vector<SpacePoint>& ground,
                                   const DiamondFamily& family, double delta, CoverMode mode,
                                   std::vector<double>* taus_out = nullptr);

struct CoverSolution {
    std::vector<std::size_t> chosen;
    double total_cost = 0.0;
    bool optimal = false;
    std::size_t covered = 0;
};

/// Classic cost-effectiveness greedy (min cost per newly covered point), lazy
/// evaluation; ties broken by lower cost then lower candidate index. Throws
/// InfeasibleCover on infeasible instances.
CoverSolution solve_cover_greedy(const CoverInstance& instance);

/// Exhaustive branch-and-bound optimum; candidate count capped.
CoverSolution solve_cover_exact(const CoverInstance& instance, std::size_t cap = 20);

} // namespace taucover
