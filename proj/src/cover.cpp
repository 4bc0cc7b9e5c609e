#include "taucover/cover.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace taucover {

void CoverInstance::recost(const std::vector<double>& taus, double n) {
    if (taus.size() != cost.size())
        throw std::invalid_argument("recost: tau list misaligned with candidates");
    for (std::size_t i = 0; i < cost.size(); ++i) cost[i] = rho_cost(taus[i], n);
}

CoverInstance build_cover_instance(const Space& space, const std::vector<SpacePoint>& ground,
                                   const DiamondFamily& family, double delta, CoverMode mode,
                                   std::vector<double>* taus_out) {
    CoverInstance inst;
    inst.mode = mode;
    inst.delta = delta;
    inst.n_ground = ground.size();
    inst.words = (ground.size() + 63) / 64;
    if (taus_out) taus_out->clear();

    std::vector<std::uint64_t> row(inst.words);
    std::vector<std::uint64_t> covered(inst.words, 0);
    for (const auto& d : family.diamonds) {
        std::fill(row.begin(), row.end(), 0);
        std::uint32_t cnt = 0;
        for (std::size_t g = 0; g < ground.size(); ++g) {
            if (diamond_member(space, d, ground[g])) {
                row[g >> 6] |= (std::uint64_t{1} << (g & 63));
                ++cnt;
            }
        }
        if (cnt == 0) continue;
        inst.cost.push_back(d.cost);
        inst.cover_counts.push_back(cnt);
        inst.bits.insert(inst.bits.end(), row.begin(), row.end());
        if (taus_out) taus_out->push_back(d.tau);
        for (std::size_t w = 0; w < inst.words; ++w) covered[w] |= row[w];
    }
    for (std::size_t g = 0; g < ground.size(); ++g) {
        if (!(covered[g >> 6] >> (g & 63) & 1)) {
            inst.feasible = false;
            inst.first_uncovered = g;
            break;
        }
    }
    return inst;
}

namespace {

std::uint32_t new_count(const CoverInstance& inst, std::size_t c,
                        const std::vector<std::uint64_t>& covered) {
    const std::uint64_t* r = inst.row(c);
    std::uint32_t n = 0;
    for (std::size_t w = 0; w < inst.words; ++w) n += std::popcount(r[w] & ~covered[w]);
    return n;
}

} // namespace

CoverSolution solve_cover_greedy(const CoverInstance& inst) {
    if (!inst.feasible)
        throw InfeasibleCover("cover instance is infeasible", SpacePoint{});
    CoverSolution sol;
    if (inst.n_ground == 0) return sol;

    struct Entry {
        double eff;
        double cost;
        std::size_t idx;
        std::uint32_t stamp; // new-cover count when queued
        bool operator>(const Entry& o) const {
            if (eff != o.eff) return eff > o.eff;
            if (cost != o.cost) return cost > o.cost;
            return idx > o.idx;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::size_t c = 0; c < inst.candidates(); ++c)
        heap.push({inst.cost[c] / inst.cover_counts[c], inst.cost[c], c, inst.cover_counts[c]});

    std::vector<std::uint64_t> covered(inst.words, 0);
    std::size_t ncov = 0;
    while (ncov < inst.n_ground && !heap.empty()) {
        Entry e = heap.top();
        heap.pop();
        const std::uint32_t nc = new_count(inst, e.idx, covered);
        if (nc == 0) continue;
        if (nc != e.stamp) {
            // stale: effectiveness only degrades as coverage grows
            heap.push({inst.cost[e.idx] / nc, inst.cost[e.idx], e.idx, nc});
            continue;
        }
        sol.chosen.push_back(e.idx);
        sol.total_cost += inst.cost[e.idx];
        const std::uint64_t* r = inst.row(e.idx);
        for (std::size_t w = 0; w < inst.words; ++w) covered[w] |= r[w];
        ncov += nc;
    }
    sol.covered = ncov;
    return sol;
}

CoverSolution solve_cover_exact(const CoverInstance& inst, std::size_t cap) {
    if (!inst.feasible)
        throw InfeasibleCover("cover instance is infeasible", SpacePoint{});
    const std::size_t m = inst.candidates();
    if (m > cap) throw std::invalid_argument("solve_cover_exact: candidate cap exceeded");
    CoverSolution best;
    if (inst.n_ground == 0) {
        best.optimal = true;
        return best;
    }
    // order by effectiveness for earlier pruning
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return inst.cost[a] / inst.cover_counts[a] < inst.cost[b] / inst.cover_counts[b];
    });

    best.total_cost = kInfinity;
    std::vector<std::size_t> cur;
    std::vector<std::uint64_t> covered(inst.words, 0);

    auto fully_covered = [&]() {
        std::size_t n = 0;
        for (std::size_t w = 0; w < inst.words; ++w) n += std::popcount(covered[w]);
        return n == inst.n_ground;
    };

    std::function<void(std::size_t, double)> dfs = [&](std::size_t k, double cost) {
        if (cost >= best.total_cost) return;
        if (fully_covered()) {
            best.total_cost = cost;
            best.chosen = cur;
            return;
        }
        if (k == m) return;
        // can the rest still cover everything?
        std::vector<std::uint64_t> rest = covered;
        for (std::size_t j = k; j < m; ++j) {
            const std::uint64_t* r = inst.row(order[j]);
            for (std::size_t w = 0; w < inst.words; ++w) rest[w] |= r[w];
        }
        std::size_t n = 0;
        for (std::size_t w = 0; w < inst.words; ++w) n += std::popcount(rest[w]);
        if (n != inst.n_ground) return;

        const std::size_t c = order[k];
        if (new_count(inst, c, covered) > 0) {
            std::vector<std::uint64_t> saved = covered;
            const std::uint64_t* r = inst.row(c);
            for (std::size_t w = 0; w < inst.words; ++w) covered[w] |= r[w];
            cur.push_back(c);
            dfs(k + 1, cost + inst.cost[c]);
            cur.pop_back();
            covered = saved;
        }
        dfs(k + 1, cost);
    };
    dfs(0, 0.0);
    std::sort(best.chosen.begin(), best.chosen.end());
    best.optimal = true;
    best.covered = inst.n_ground;
    return best;
}

} // namespace taucover
