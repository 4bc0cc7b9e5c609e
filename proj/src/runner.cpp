#include "taucover/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "taucover/axioms.hpp"
#include "taucover/maps.hpp"
#include "taucover/nulldist.hpp"

namespace taucover {

namespace {

using json = nlohmann::ordered_json;

SpaceHandle build_space(const json& s) {
    const std::string kind = s.at("kind").get<std::string>();
    if (kind == "minkowski") return make_minkowski(s.at("dim").get<std::size_t>());
    // warped product
    const double lo = s.at("interval")[0].get<double>();
    const double hi = s.at("interval")[1].get<double>();
    const auto& w = s.at("warp");
    const std::string form = w.at("form").get<std::string>();
    std::optional<WarpFunction> warp;
    if (form == "constant")
        warp = WarpFunction::constant(w.at("value").get<double>());
    else if (form == "affine")
        warp = WarpFunction::affine(w.at("a").get<double>(), w.at("b").get<double>());
    else if (form == "exp")
        warp = WarpFunction::exponential();
    else
        warp = WarpFunction::tabulated(w.at("u").get<std::vector<double>>(),
                                       w.at("f").get<std::vector<double>>());
    const auto& b = s.at("base");
    const std::string bk = b.at("kind").get<std::string>();
    BaseHandle base;
    if (bk == "euclidean")
        base = make_euclidean_base(b.at("dim").get<std::size_t>());
    else if (bk == "hyperbolic_plane")
        base = make_hyperbolic_plane();
    else {
        std::vector<FiniteMetricGraph::Edge> edges;
        for (const auto& e : b.at("edges"))
            edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<double>()});
        base = make_metric_graph(b.at("nodes").get<std::size_t>(), std::move(edges));
    }
    return make_warped_product(lo, hi, std::move(*warp), std::move(base));
}

Region build_region(SpaceHandle space, const json& r) {
    const std::string kind = r.at("kind").get<std::string>();
    if (kind == "box")
        return Region::box(std::move(space), r.at("lo").get<std::vector<double>>(),
                           r.at("hi").get<std::vector<double>>());
    std::vector<SpacePoint> pts;
    for (const auto& p : r.at("points"))
        pts.push_back(SpacePoint{space->id(), p.get<std::vector<double>>()});
    return Region::cloud(std::move(space), std::move(pts));
}

SpacetimeMap build_map(SpaceHandle space, const json& m) {
    const std::string name = m.at("name").get<std::string>();
    if (name == "scaling") {
        auto mink = std::dynamic_pointer_cast<const MinkowskiSpace>(space);
        if (!mink) throw ConfigError("map 'scaling' needs a minkowski space");
        return scaling_map(mink, m.at("lambda").get<double>());
    }
    if (name == "extension_future") {
        auto mink = std::dynamic_pointer_cast<const MinkowskiSpace>(space);
        if (!mink) throw ConfigError("map 'extension_future' needs a minkowski space");
        SpacePoint p{mink->id(), m.at("p").get<std::vector<double>>()};
        return extension_map_future(mink, std::move(p), m.at("lambda").get<double>());
    }
    auto warped = std::dynamic_pointer_cast<const WarpedProductSpace>(space);
    if (!warped) throw ConfigError("map 'product_extension' needs a warped product space");
    SpacePoint p{warped->id(), m.at("p").get<std::vector<double>>()};
    return product_extension_map(warped, std::move(p), m.at("lambda").get<double>());
}

std::vector<double> schedule_of(const json& p, const char* key) {
    return p.at(key).get<std::vector<double>>();
}

CoverMode mode_of(const json& p, CoverMode fallback = CoverMode::V) {
    if (!p.contains("mode")) return fallback;
    return p.at("mode").get<std::string>() == "W" ? CoverMode::W : CoverMode::V;
}

EstimateConfig estimate_config(const json& p, std::uint64_t seed) {
    EstimateConfig cfg;
    cfg.seed = seed;
    if (p.contains("sample_budget")) cfg.sample_budget = p.at("sample_budget").get<std::size_t>();
    if (p.contains("scales")) cfg.lattice.scales = p.at("scales").get<int>();
    return cfg;
}

json audit_to_json(const MapAudit& a) {
    json j;
    j["pairs_sampled"] = a.pairs_sampled;
    j["chron_pairs"] = a.chron_pairs;
    j["empirical_lambda"] = json_number(a.empirical_lambda);
    j["forward_violations"] = a.forward_violations;
    j["dual_violations"] = a.dual_violations;
    j["chron_dual_violations"] = a.chron_dual_violations;
    j["lambda_within_declared"] = a.lambda_within_declared;
    json mod = json::array();
    for (const auto& row : a.modulus)
        mod.push_back({{"dx_upper", row.dx_upper}, {"max_dy", row.max_dy}, {"pairs", row.pairs}});
    j["modulus"] = mod;
    return j;
}

// ---------------------------------------------------------------------------
// Task handlers fill payload/verdicts and write CSVs.

struct TaskIO {
    const ExperimentConfig* cfg;
    std::uint64_t seed;
    std::filesystem::path dir;
    std::string prefix;
    ReportEnvelope* rep;

    std::string path(const std::string& stem) const {
        return (dir / (prefix + "_" + stem)).string();
    }
};

void task_axioms(const TaskIO& io, SpaceHandle space, const json& p) {
    AxiomCheckConfig ac;
    ac.triples = p.at("samples").get<std::size_t>();
    if (p.contains("tol")) ac.tol = p.at("tol").get<double>();
    ac.seed = io.seed;
    const Region region = build_region(space, p.at("region"));
    const AxiomReport rep = check_prelength_axioms(*space, region, ac);
    const CausalityReport crep = check_causality_conditions(*space, region, ac.triples, io.seed);

    json j;
    j["triples_requested"] = rep.triples_requested;
    j["triples_tested"] = rep.triples_tested;
    j["worst_reverse_triangle_violation"] = json_number(rep.worst_reverse_triangle_violation);
    j["relation_violations"] = rep.relation_violations;
    j["lsc_spot_failures"] = rep.lsc_spot_failures;
    j["inconclusive"] = rep.inconclusive;
    j["chronology_violations"] = crep.chronology_violations;
    j["causality_violations"] = crep.causality_violations;
    io.rep->payload = j;

    io.rep->verdicts.push_back({"core.reverse-triangle<=tol",
                                rep.worst_reverse_triangle_violation <= ac.tol,
                                "worst=" + csv_num(rep.worst_reverse_triangle_violation) +
                                    (rep.inconclusive ? " (inconclusive quota)" : "")});
    io.rep->verdicts.push_back(
        {"core.relations(ll-subset-le, tau>0 iff ll, tau=0 off le)",
         rep.relation_violations == 0, std::to_string(rep.relation_violations) + " violations"});
    io.rep->verdicts.push_back({"core.lsc-spot-checks", rep.lsc_spot_failures == 0,
                                std::to_string(rep.lsc_spot_failures) + " failures"});
    io.rep->verdicts.push_back({"core.causality-conditions(chronological, causal)", crep.pass(),
                                std::to_string(crep.chronology_violations) + "+" +
                                    std::to_string(crep.causality_violations) + " violations"});
}

void task_measure(const TaskIO& io, SpaceHandle space, const json& p, bool restricted) {
    const Region region = build_region(space, p.at("region"));
    const double n_exp = p.at("N").get<double>();
    const CoverMode mode = mode_of(p);
    const auto schedule = schedule_of(p, "delta_schedule");
    EstimateConfig ec = estimate_config(p, io.seed);

    MeasureEstimate est;
    if (restricted) {
        ec.infeasible_as_infinity = true;
        est = estimate_restricted(space, region, n_exp, mode, schedule, ec);
    } else {
        est = estimate_measure(*space, region, n_exp, mode, schedule, ec);
    }
    io.rep->payload = estimate_to_json(est);
    io.rep->payload["restricted"] = restricted;
    write_measure_csv(io.path("levels.csv"), {&est});
    write_loglog_csv(io.path("loglog.csv"), {&est});
    if (!restricted) {
        bool feasible = true;
        for (const auto& l : est.levels) feasible = feasible && l.feasible;
        io.rep->verdicts.push_back({"measures.cover-feasible-at-every-delta", feasible,
                                    "value=" + csv_num(est.value)});
    }
}

void task_dimension(const TaskIO& io, SpaceHandle space, const json& p) {
    const Region region = build_region(space, p.at("region"));
    const auto n_list = p.at("N_list").get<std::vector<double>>();
    const CoverMode mode = mode_of(p, CoverMode::W);
    const auto schedule = schedule_of(p, "delta_schedule");
    EstimateConfig ec = estimate_config(p, io.seed);
    const DimensionScan scan = dimension_scan(*space, region, n_list, mode, schedule, ec);

    json entries = json::array();
    std::vector<const MeasureEstimate*> series;
    for (const auto& e : scan.entries) {
        json je = estimate_to_json(e.estimate);
        je["class"] = e.cls == SeriesClass::Divergent   ? "divergent"
                      : e.cls == SeriesClass::Decaying ? "decaying"
                                                        : "flat";
        entries.push_back(je);
        series.push_back(&e.estimate);
    }
    json j;
    j["entries"] = entries;
    j["resolved"] = scan.resolved;
    if (scan.resolved) {
        j["dim_estimate"] = scan.dim_estimate;
        j["bracket"] = {scan.bracket_lo, scan.bracket_hi};
    }
    io.rep->payload = j;
    write_measure_csv(io.path("levels.csv"), series);
    write_loglog_csv(io.path("loglog.csv"), series);
}

void task_nulldist(const TaskIO& io, SpaceHandle space, const json& p) {
    const Region box = build_region(space, p.at("box"));
    const double pitch = p.at("pitch").get<double>();

    std::vector<std::pair<SpacePoint, SpacePoint>> queries;
    std::vector<SpacePoint> extra;
    for (const auto& q : p.at("queries")) {
        SpacePoint a{space->id(), q[0].get<std::vector<double>>()};
        SpacePoint b{space->id(), q[1].get<std::vector<double>>()};
        extra.push_back(a);
        extra.push_back(b);
        queries.emplace_back(std::move(a), std::move(b));
    }
    const TimeFunction rho = TimeFunction::coordinate_time();
    const CausalPathGraph graph = CausalPathGraph::build(space, box, pitch, rho, extra);

    json j;
    j["nodes"] = graph.nodes().size();
    j["edges"] = graph.edge_count();
    j["pitch"] = pitch;
    json qs = json::array();
    for (const auto& [a, b] : queries) {
        const auto res = null_distance(graph, a, b);
        qs.push_back({{"from", a.x}, {"to", b.x}, {"value", json_number(res.value)},
                      {"path_nodes", res.path.size()}});
    }
    j["queries"] = qs;

    // Lemma-style diamond bound on random diamonds in the box
    const std::size_t n_diamonds = p.contains("diamond_checks")
                                       ? p.at("diamond_checks").get<std::size_t>()
                                       : 20;
    DiamondFamily fam = generate_random_family(*space, box, 0.5, CoverMode::W, 2.0,
                                               4 * n_diamonds, io.seed ^ 0xD1A2ULL);
    if (fam.diamonds.size() > n_diamonds) fam.diamonds.resize(n_diamonds);
    const DiamondBoundReport db = check_diamond_bound(graph, fam.diamonds, 24, io.seed);
    j["diamond_bound"] = {{"diamonds", db.diamonds},
                          {"violations", db.violations},
                          {"worst_excess", json_number(db.worst_excess)},
                          {"slack", db.slack}};

    const std::size_t bil_pairs =
        p.contains("bilipschitz_pairs") ? p.at("bilipschitz_pairs").get<std::size_t>() : 400;
    const BiLipschitzReport bl = empirical_bilipschitz(graph, bil_pairs, 0.3, io.seed ^ 0xB1ULL);
    j["bilipschitz"] = {{"constant", json_number(bl.constant)},
                        {"pairs", bl.pairs},
                        {"locality_radius", bl.locality_radius}};

    io.rep->verdicts.push_back({"nulldist.diamond-bound(diam<=2*dhat+slack)", db.violations == 0,
                                std::to_string(db.violations) + " violations"});

    if (p.contains("measure_N")) {
        const double n_exp = p.at("measure_N").get<double>();
        const auto schedule = schedule_of(p, "measure_delta_schedule");
        EstimateConfig ec;
        ec.seed = io.seed;
        if (p.contains("measure_sample_budget"))
            ec.sample_budget = p.at("measure_sample_budget").get<std::size_t>();
        const NullMeasureReport nm =
            measures_under_null_distance(*space, graph, box, n_exp, schedule, ec);
        j["measures"] = {{"V", estimate_to_json(nm.v_mode)},
                         {"W", estimate_to_json(nm.w_mode)},
                         {"gap", json_number(nm.gap)},
                         {"box_reference", nm.box_reference}};
        io.rep->verdicts.push_back({"nulldist.V-equals-W-within-10pct", nm.gap <= 0.10,
                                    "gap=" + csv_num(nm.gap)});
        write_measure_csv(io.path("levels.csv"), {&nm.v_mode, &nm.w_mode});
        write_loglog_csv(io.path("loglog.csv"), {&nm.v_mode, &nm.w_mode});
    }
    io.rep->payload = j;

    // graph export and distance histogram
    std::vector<std::vector<std::string>> rows;
    graph.for_each_edge([&](std::size_t u, std::size_t v, double w) {
        rows.push_back({std::to_string(u), std::to_string(v), csv_num(w)});
    });
    write_csv(io.path("edges.csv"), {"src", "dst", "weight"}, rows);

    std::vector<std::vector<std::string>> hist;
    const auto& d0 = graph.distances_from(0);
    std::map<int, std::size_t> buckets;
    for (double d : d0)
        if (std::isfinite(d)) ++buckets[static_cast<int>(std::floor(d / (4 * pitch)))];
    for (const auto& [b, c] : buckets)
        hist.push_back({csv_num(b * 4 * pitch), std::to_string(c)});
    write_csv(io.path("distance_histogram.csv"), {"bucket_lo", "count"}, hist);
}

void task_map_audit(const TaskIO& io, SpaceHandle space, const json& p) {
    const SpacetimeMap f = build_map(space, p.at("map"));
    const Region region = build_region(space, p.at("region"));
    const std::size_t n = p.at("pairs").get<std::size_t>();
    const double tol = p.contains("tol") ? p.at("tol").get<double>() : 1e-9;
    const MapAudit audit = audit_map(f, region, n, tol, io.seed);
    json j = audit_to_json(audit);
    j["map"] = f.name;
    j["declared_lambda"] = json_number(f.declared_lambda);
    io.rep->payload = j;
    if (std::isfinite(f.declared_lambda))
        io.rep->verdicts.push_back({"maps.empirical-lambda<=declared+tol",
                                    audit.lambda_within_declared,
                                    "empirical=" + csv_num(audit.empirical_lambda)});
    if (f.declared_preserving)
        io.rep->verdicts.push_back({"maps.zero-forward-causality-violations",
                                    audit.forward_violations == 0,
                                    std::to_string(audit.forward_violations) + " violations"});
    if (f.declared_dually_preserving)
        io.rep->verdicts.push_back({"maps.zero-dual-causality-violations",
                                    audit.dual_violations == 0,
                                    std::to_string(audit.dual_violations) + " violations"});
}

void task_volume_comparison(const TaskIO& io, SpaceHandle space, const json& p) {
    const SpacetimeMap f = build_map(space, p.at("map"));
    const Region region = build_region(space, p.at("region"));
    const double n_exp = p.at("N").get<double>();
    const CoverMode mode = mode_of(p, CoverMode::W);
    const auto schedule = schedule_of(p, "delta_schedule");
    const double tol = p.contains("tolerance") ? p.at("tolerance").get<double>() : 0.1;
    EstimateConfig ec = estimate_config(p, io.seed);
    const VolumeComparisonReport rep =
        verify_volume_comparison(f, region, n_exp, mode, schedule, ec, tol);
    json j;
    j["map"] = f.name;
    j["N"] = rep.n_exponent;
    j["mode"] = rep.mode == CoverMode::V ? "V" : "W";
    j["lambda"] = rep.lambda;
    j["lambda_pow_N"] = rep.lambda_pow_n;
    j["estimate_domain"] = json_number(rep.estimate_domain);
    j["estimate_image"] = json_number(rep.estimate_image);
    j["ratio"] = json_number(rep.ratio);
    j["tolerance"] = rep.tolerance;
    j["audit"] = audit_to_json(rep.audit);
    io.rep->payload = j;
    io.rep->verdicts.push_back({"maps.volume-comparison(ratio<=lambda^N*(1+tol))", rep.pass,
                                "ratio=" + csv_num(rep.ratio) +
                                    " bound=" + csv_num(rep.lambda_pow_n * (1 + rep.tolerance))});
}

} // namespace

RunResult run_experiment(const ExperimentConfig& config,
                         const std::optional<std::string>& out_override,
                         const std::optional<std::uint64_t>& seed_override, int threads) {
    (void)threads; // reserved; tasks run sequentially for determinism
    RunResult result;
    const auto t0 = std::chrono::steady_clock::now();

    const std::uint64_t seed = seed_override.value_or(config.seed);
    std::filesystem::path dir = out_override.value_or(config.out_dir);
    std::filesystem::create_directories(dir);

    result.report.config_echo = config.raw;
    result.report.config_echo["seed"] = seed;

    TaskIO io{&config, seed, dir, config.prefix, &result.report};
    try {
        SpaceHandle space = build_space(config.raw.at("space"));
        const json& p = config.raw.at("params");
        if (config.task == "axioms")
            task_axioms(io, space, p);
        else if (config.task == "measure")
            task_measure(io, space, p, false);
        else if (config.task == "restricted-measure")
            task_measure(io, space, p, true);
        else if (config.task == "dimension")
            task_dimension(io, space, p);
        else if (config.task == "nulldist")
            task_nulldist(io, space, p);
        else if (config.task == "map-audit")
            task_map_audit(io, space, p);
        else if (config.task == "volume-comparison")
            task_volume_comparison(io, space, p);
        else
            throw ConfigError("unknown task '" + config.task + "'");
        result.exit_code = result.report.all_pass() ? 0 : 3;
    } catch (const InfeasibleCover& e) {
        result.report.payload = {{"error", e.what()},
                                 {"uncovered_point", e.uncovered.x}};
        result.exit_code = 2;
    } catch (const ConfigError&) {
        throw; // surfaced by the CLI as exit 1
    }

    const auto t1 = std::chrono::steady_clock::now();
    result.report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

    std::ofstream out(dir / (config.prefix + "_report.json"));
    if (!out) throw std::runtime_error("cannot write report");
    out << result.report.to_json().dump(2) << "\n";
    return result;
}

} // namespace taucover
