#include "taucover/measures.hpp"

#include <algorithm>
#include <cmath>

namespace taucover {

void validate_schedule(const std::vector<double>& schedule) {
    if (schedule.empty()) throw std::invalid_argument("delta schedule must not be empty");
    for (double d : schedule)
        if (!(d > 0.0)) throw std::invalid_argument("delta schedule entries must be positive");
    for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
        if (!(schedule[i + 1] < schedule[i]))
            throw std::invalid_argument("delta schedule must be strictly decreasing");
}

double loglog_slope(const std::vector<MeasureLevel>& levels) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& l : levels) {
        if (!std::isfinite(l.value) || l.value <= 0.0) continue;
        const double x = std::log(l.delta), y = std::log(l.value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double den = double(n) * sxx - sx * sx;
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (double(n) * sxy - sx * sy) / den;
}

namespace {

void finish_estimate(MeasureEstimate& est) {
    est.envelope.clear();
    double run = 0.0;
    for (const auto& l : est.levels) {
        run = std::max(run, l.value);
        est.envelope.push_back(run);
    }
    est.value = est.envelope.empty() ? 0.0 : est.envelope.back();
    est.slope = loglog_slope(est.levels);
}

MeasureLevel solve_level(const Space& space, const std::vector<SpacePoint>& ground,
                         const Region& region, double n_exp, CoverMode mode, double delta,
                         const EstimateConfig& cfg) {
    MeasureLevel level;
    level.delta = delta;
    LatticeOptions opts = cfg.lattice;
    opts.ground_hint = ground.size();

    auto solve_family = [&](CoverMode fam_mode) -> std::pair<CoverSolution, std::size_t> {
        // Override metrics can filter scales unevenly (quantized vertex
        // distances); on holes, add one scale and relax the sample-density
        // cap a step at a time rather than opening the door to single-point
        // tiles everywhere.
        CoverInstance inst;
        for (int attempt = 0; attempt < 4; ++attempt) {
            LatticeOptions o = opts;
            o.scales += attempt;
            o.kappa = opts.kappa / static_cast<double>(1 << attempt);
            const DiamondFamily fam =
                generate_lattice_family(space, region, delta, fam_mode, n_exp, o, cfg.metric);
            inst = build_cover_instance(space, ground, fam, delta, fam_mode);
            if (inst.feasible) break;
        }
        if (!inst.feasible) {
            if (cfg.infeasible_as_infinity) {
                CoverSolution inf;
                inf.total_cost = kInfinity;
                return {inf, inst.candidates()};
            }
            throw InfeasibleCover("estimate_measure: ground point uncovered at delta=" +
                                      std::to_string(delta),
                                  ground[inst.first_uncovered]);
        }
        return {solve_cover_greedy(inst), inst.candidates()};
    };

    auto [sol, cands] = solve_family(mode);
    level.candidates = cands;
    level.chosen = sol.chosen.size();
    level.value = sol.total_cost;
    if (mode == CoverMode::W) {
        // any diam<delta cover is W-feasible; keep the cheaper solution
        auto [vsol, vcands] = solve_family(CoverMode::V);
        if (vsol.total_cost < level.value) {
            level.value = vsol.total_cost;
            level.chosen = vsol.chosen.size();
            level.candidates = std::max(level.candidates, vcands);
        }
    }
    level.feasible = std::isfinite(level.value);
    return level;
}

} // namespace

MeasureEstimate estimate_measure(const Space& space, const Region& region, double n_exponent,
                                 CoverMode mode, const std::vector<double>& delta_schedule,
                                 const EstimateConfig& cfg) {
    validate_schedule(delta_schedule);
    MeasureEstimate est;
    est.n_exponent = n_exponent;
    est.mode = mode;
    const auto ground = region.sample(cfg.sample_budget, cfg.seed);
    for (double delta : delta_schedule)
        est.levels.push_back(solve_level(space, ground, region, n_exponent, mode, delta, cfg));
    finish_estimate(est);
    return est;
}

// ---------------------------------------------------------------------------
// Restricted estimation

namespace {

// Vertical epsilon-pair around an uncovered carrier point; shrinks until both
// vertices lie in the carrier (open carriers) or gives up.
bool try_rescue(const Space& parent, const Region& carrier, const SpacePoint& s, double eps0,
                double n_exp, CoverMode mode, double delta, std::vector<CausalDiamond>& out) {
    double eps = eps0;
    for (int k = 0; k < 24; ++k, eps *= 0.5) {
        SpacePoint a = s, b = s;
        a.x[0] -= eps;
        b.x[0] += eps;
        if (!carrier.member(a) || !carrier.member(b)) continue;
        try {
            if (!parent.causal_le(a, b)) continue;
            CausalDiamond d = make_diamond(parent, a, b, n_exp);
            const double vd = parent.distance(d.a, d.b);
            const bool ok = (mode == CoverMode::W) ? vd < delta : d.diam < delta;
            if (!ok) continue;
            if (!diamond_member(parent, d, s)) continue;
            out.push_back(std::move(d));
            return true;
        } catch (const std::exception&) {
            continue;
        }
    }
    return false;
}

} // namespace

MeasureEstimate estimate_restricted(SpaceHandle parent, const Region& carrier, double n_exponent,
                                    CoverMode mode, const std::vector<double>& delta_schedule,
                                    const EstimateConfig& cfg) {
    validate_schedule(delta_schedule);
    if (!parent) throw std::invalid_argument("estimate_restricted: null parent");
    const Space& par = *parent;

    MeasureEstimate est;
    est.n_exponent = n_exponent;
    est.mode = mode;
    const auto ground = carrier.sample(cfg.sample_budget, cfg.seed);

    for (double delta : delta_schedule) {
        MeasureLevel level;
        level.delta = delta;
        DiamondFamily fam;
        try {
            LatticeOptions opts = cfg.lattice;
            opts.ground_hint = ground.size();
            fam = generate_lattice_family(par, carrier, delta, mode, n_exponent, opts, cfg.metric);
        } catch (const std::invalid_argument&) {
            fam.mode = mode;
            fam.delta = delta;
        }
        // carrier vertex pairs only
        std::erase_if(fam.diamonds, [&](const CausalDiamond& d) {
            return !carrier.member(d.a) || !carrier.member(d.b);
        });

        CoverInstance inst = build_cover_instance(par, ground, fam, delta, mode);
        if (!inst.feasible) {
            // rescue uncovered points with shrinking in-carrier pairs
            std::vector<std::uint64_t> covered(inst.words, 0);
            for (std::size_t c = 0; c < inst.candidates(); ++c) {
                const auto* r = inst.row(c);
                for (std::size_t w = 0; w < inst.words; ++w) covered[w] |= r[w];
            }
            bool all_ok = true;
            const double eps0 = 0.25 * delta;
            for (std::size_t g = 0; g < ground.size(); ++g) {
                if (covered[g >> 6] >> (g & 63) & 1) continue;
                if (!try_rescue(par, carrier, ground[g], eps0, n_exponent, mode, delta,
                                fam.diamonds))
                    all_ok = false;
            }
            if (all_ok) inst = build_cover_instance(par, ground, fam, delta, mode);
        }
        level.candidates = inst.candidates();
        if (!inst.feasible || (ground.size() > 0 && inst.candidates() == 0)) {
            level.value = kInfinity;
            level.feasible = false;
        } else {
            const CoverSolution sol = solve_cover_greedy(inst);
            level.value = sol.total_cost;
            level.chosen = sol.chosen.size();
        }
        est.levels.push_back(level);
    }
    finish_estimate(est);
    return est;
}

// ---------------------------------------------------------------------------
// Dimension scan

DimensionScan dimension_scan(const Space& space, const Region& region,
                             const std::vector<double>& n_list, CoverMode mode,
                             const std::vector<double>& delta_schedule,
                             const EstimateConfig& cfg) {
    validate_schedule(delta_schedule);
    if (n_list.empty()) throw std::invalid_argument("dimension scan: empty N list");
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
        if (!(n_list[i] < n_list[i + 1]))
            throw std::invalid_argument("dimension scan: N list must increase");

    DimensionScan scan;
    scan.entries.resize(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        scan.entries[i].n_exponent = n_list[i];
        scan.entries[i].estimate.n_exponent = n_list[i];
        scan.entries[i].estimate.mode = mode;
    }

    const auto ground = region.sample(cfg.sample_budget, cfg.seed);
    LatticeOptions opts = cfg.lattice;
    opts.ground_hint = ground.size();
    // single-scale families: the per-delta sums under a pitch-delta tiling
    // scale like delta^(N-dim), which is the signal the scan classifies;
    // boundary-refinement scales would let N > dim runs slide to the sample
    // floor and flatten the series
    opts.scales = 1;

    // families and membership bitsets are N-independent; recost per N
    for (double delta : delta_schedule) {
        const DiamondFamily fam =
            generate_lattice_family(space, region, delta, mode, 1.0, opts, cfg.metric);
        std::vector<double> taus;
        CoverInstance inst = build_cover_instance(space, ground, fam, delta, mode, &taus);
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            auto& est = scan.entries[i].estimate;
            MeasureLevel level;
            level.delta = delta;
            level.candidates = inst.candidates();
            if (!inst.feasible) {
                if (!cfg.infeasible_as_infinity)
                    throw InfeasibleCover("dimension scan: uncovered point",
                                          ground[inst.first_uncovered]);
                level.value = kInfinity;
                level.feasible = false;
            } else {
                inst.recost(taus, n_list[i]);
                const CoverSolution sol = solve_cover_greedy(inst);
                level.value = sol.total_cost;
                level.chosen = sol.chosen.size();
            }
            est.levels.push_back(level);
        }
        if (mode == CoverMode::W) {
            // keep the cheaper V-family solution per N (W-feasible as well)
            const DiamondFamily vfam =
                generate_lattice_family(space, region, delta, CoverMode::V, 1.0, opts, cfg.metric);
            std::vector<double> vtaus;
            CoverInstance vinst =
                build_cover_instance(space, ground, vfam, delta, CoverMode::V, &vtaus);
            if (vinst.feasible) {
                for (std::size_t i = 0; i < n_list.size(); ++i) {
                    auto& level = scan.entries[i].estimate.levels.back();
                    if (!level.feasible) continue;
                    vinst.recost(vtaus, n_list[i]);
                    const CoverSolution sol = solve_cover_greedy(vinst);
                    if (sol.total_cost < level.value) {
                        level.value = sol.total_cost;
                        level.chosen = sol.chosen.size();
                    }
                }
            }
        }
    }

    for (auto& e : scan.entries) {
        finish_estimate(e.estimate);
        const double s = e.estimate.slope;
        const bool all_inf = std::all_of(e.estimate.levels.begin(), e.estimate.levels.end(),
                                         [](const MeasureLevel& l) { return !l.feasible; });
        if (all_inf || (std::isfinite(s) && s < -0.1))
            e.cls = SeriesClass::Divergent;
        else if (std::isfinite(s) && s > 0.1)
            e.cls = SeriesClass::Decaying;
        else
            e.cls = SeriesClass::Flat;
    }

    // bracket: largest divergent N below the smallest decaying N, consistent
    double lo = -kInfinity, hi = kInfinity;
    bool consistent = true;
    for (const auto& e : scan.entries) {
        if (e.cls == SeriesClass::Divergent) {
            if (e.n_exponent > lo) lo = e.n_exponent;
            if (e.n_exponent > hi) consistent = false;
        } else if (e.cls == SeriesClass::Decaying) {
            if (e.n_exponent < hi) hi = e.n_exponent;
        }
    }
    for (const auto& e : scan.entries)
        if (e.cls == SeriesClass::Decaying && e.n_exponent < lo) consistent = false;
    if (std::isfinite(lo) && std::isfinite(hi) && lo < hi && consistent) {
        scan.resolved = true;
        scan.bracket_lo = lo;
        scan.bracket_hi = hi;
        scan.dim_estimate = 0.5 * (lo + hi);
    }
    return scan;
}

} // namespace taucover
