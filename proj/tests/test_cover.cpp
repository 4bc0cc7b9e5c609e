#include <doctest.h>

#include <cmath>

#include "taucover/cover.hpp"
#include "taucover/rng.hpp"

using namespace taucover;

namespace {

// Hand-built instance helper (bypasses diamond membership).
CoverInstance toy_instance(std::size_t n_ground,
                           const std::vector<std::pair<double, std::vector<std::size_t>>>& cands) {
    CoverInstance inst;
    inst.n_ground = n_ground;
    inst.words = (n_ground + 63) / 64;
    std::vector<std::uint64_t> covered(inst.words, 0);
    for (const auto& [cost, pts] : cands) {
        std::vector<std::uint64_t> row(inst.words, 0);
        for (auto g : pts) row[g >> 6] |= (std::uint64_t{1} << (g & 63));
        inst.cost.push_back(cost);
        inst.cover_counts.push_back(static_cast<std::uint32_t>(pts.size()));
        inst.bits.insert(inst.bits.end(), row.begin(), row.end());
        for (std::size_t w = 0; w < inst.words; ++w) covered[w] |= row[w];
    }
    for (std::size_t g = 0; g < n_ground; ++g)
        if (!(covered[g >> 6] >> (g & 63) & 1)) {
            inst.feasible = false;
            inst.first_uncovered = g;
            break;
        }
    return inst;
}

} // namespace

TEST_CASE("greedy picks by cost-effectiveness: the 3-point example") {
    // {cost 1, covers all 3} vs {cost 0.6, covers 2}: 0.6/2 < 1/3, so greedy
    // starts with the partial cover and pays 1.6 total; the optimum is 1.0.
    auto inst = toy_instance(3, {{1.0, {0, 1, 2}}, {0.6, {0, 1}}});
    const auto sol = solve_cover_greedy(inst);
    REQUIRE(sol.chosen.size() == 2);
    CHECK(sol.chosen[0] == 1);
    CHECK(sol.total_cost == doctest::Approx(1.6));
    CHECK(solve_cover_exact(inst).total_cost == doctest::Approx(1.0));
}

TEST_CASE("disjoint tiling: greedy returns the tiling exactly and matches exact") {
    std::vector<std::pair<double, std::vector<std::size_t>>> cands;
    for (std::size_t i = 0; i < 6; ++i) cands.push_back({0.5, {2 * i, 2 * i + 1}});
    auto inst = toy_instance(12, cands);
    const auto greedy = solve_cover_greedy(inst);
    const auto exact = solve_cover_exact(inst);
    CHECK(greedy.chosen.size() == 6);
    CHECK(greedy.total_cost == doctest::Approx(3.0));
    CHECK(exact.total_cost == doctest::Approx(greedy.total_cost));
}

TEST_CASE("exact solver: enumeration on the 3-point instance; infeasible errors") {
    auto inst = toy_instance(3, {{1.0, {0, 1, 2}}, {0.6, {0, 1}}, {0.5, {2}}});
    const auto exact = solve_cover_exact(inst);
    CHECK(exact.total_cost == doctest::Approx(1.0)); // min(1, 0.6 + 0.5)
    CHECK(exact.optimal);

    auto bad = toy_instance(3, {{1.0, {0, 1}}});
    CHECK_FALSE(bad.feasible);
    CHECK(bad.first_uncovered == 2);
    CHECK_THROWS_AS((void)solve_cover_greedy(bad), InfeasibleCover);
    CHECK_THROWS_AS((void)solve_cover_exact(bad), InfeasibleCover);

    auto big = toy_instance(1, std::vector<std::pair<double, std::vector<std::size_t>>>(
                                   25, {1.0, {0}}));
    CHECK_THROWS_AS((void)solve_cover_exact(big, 20), std::invalid_argument);
}

TEST_CASE("greedy within (1 + ln n) of exact on random instances") {
    Rng rng(2024);
    const double bound = 1.0 + std::log(20.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n_ground = 4 + rng.index(12);
        const std::size_t n_cand = 6 + rng.index(15); // <= 20
        std::vector<std::pair<double, std::vector<std::size_t>>> cands;
        for (std::size_t c = 0; c < n_cand; ++c) {
            std::vector<std::size_t> pts;
            for (std::size_t g = 0; g < n_ground; ++g)
                if (rng.uniform() < 0.35) pts.push_back(g);
            if (pts.empty()) pts.push_back(rng.index(n_ground));
            cands.push_back({rng.uniform(0.1, 2.0), std::move(pts)});
        }
        // guarantee feasibility with one expensive full cover
        std::vector<std::size_t> all(n_ground);
        for (std::size_t g = 0; g < n_ground; ++g) all[g] = g;
        cands.push_back({3.0, std::move(all)});

        auto inst = toy_instance(n_ground, cands);
        REQUIRE(inst.feasible);
        const auto greedy = solve_cover_greedy(inst);
        const auto exact = solve_cover_exact(inst, 21);
        CHECK(greedy.total_cost >= exact.total_cost - 1e-12);
        CHECK(greedy.total_cost <= bound * exact.total_cost + 1e-12);
    }
}

TEST_CASE("deterministic tie-breaking: lower cost then lower index") {
    auto inst = toy_instance(2, {{1.0, {0, 1}}, {0.9, {0, 1}}, {0.9, {0, 1}}});
    const auto sol = solve_cover_greedy(inst);
    REQUIRE(sol.chosen.size() == 1);
    CHECK(sol.chosen[0] == 1); // cheapest, then lowest index
}
