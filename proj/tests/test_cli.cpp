#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "taucover/report.hpp"
#include "taucover/runner.hpp"

using namespace taucover;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    auto dir = fs::temp_directory_path() / ("taucover_test_" + tag);
    fs::create_directories(dir);
    return dir;
}

nlohmann::ordered_json measure_config() {
    return nlohmann::ordered_json::parse(R"({
        "seed": 42,
        "space": {"kind": "minkowski", "dim": 2},
        "task": "measure",
        "params": {
            "region": {"kind": "box", "lo": [0, 0], "hi": [1, 1]},
            "N": 2.0,
            "mode": "V",
            "delta_schedule": [0.4, 0.2, 0.1, 0.05],
            "sample_budget": 4000
        },
        "output": {"prefix": "sq"}
    })");
}

} // namespace

TEST_CASE("config validation: unknown keys, bad schedules, missing seed") {
    auto good = measure_config();
    CHECK_NOTHROW((void)ExperimentConfig::from_json(good));

    auto extra = good;
    extra["surprise"] = 1;
    CHECK_THROWS_AS((void)ExperimentConfig::from_json(extra), ConfigError);

    auto nested = good;
    nested["params"]["typo_key"] = true;
    CHECK_THROWS_AS((void)ExperimentConfig::from_json(nested), ConfigError);

    auto noseed = good;
    noseed.erase("seed");
    CHECK_THROWS_AS((void)ExperimentConfig::from_json(noseed), ConfigError);

    auto increasing = good;
    increasing["params"]["delta_schedule"] = {0.1, 0.2};
    CHECK_THROWS_WITH_AS((void)ExperimentConfig::from_json(increasing),
                         "params(measure): delta schedule must be strictly decreasing",
                         ConfigError);

    auto badmode = good;
    badmode["params"]["mode"] = "X";
    CHECK_THROWS_AS((void)ExperimentConfig::from_json(badmode), ConfigError);

    auto badspace = good;
    badspace["space"] = {{"kind", "desitter"}};
    CHECK_THROWS_AS((void)ExperimentConfig::from_json(badspace), ConfigError);
}

TEST_CASE("measure task: CSV rows, PASS verdict, exit 0") {
    const auto dir = temp_dir("measure");
    const auto cfg = ExperimentConfig::from_json(measure_config());
    const auto result = run_experiment(cfg, dir.string());
    CHECK(result.exit_code == 0);
    CHECK(result.report.all_pass());

    std::ifstream csv(dir / "sq_levels.csv");
    REQUIRE(csv.good());
    std::string line;
    std::size_t rows = 0;
    std::getline(csv, line);
    CHECK(line == "mode,N,delta,candidates,chosen,total_cost,feasible");
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);

    std::ifstream rep(dir / "sq_report.json");
    REQUIRE(rep.good());
    const auto j = nlohmann::ordered_json::parse(rep);
    CHECK(j.at("all_pass").get<bool>());
    CHECK(j.at("payload").at("levels").size() == 4);
}

TEST_CASE("identical config and seed give byte-identical payloads") {
    const auto cfg = ExperimentConfig::from_json(measure_config());
    const auto dir1 = temp_dir("det1"), dir2 = temp_dir("det2");
    auto r1 = run_experiment(cfg, dir1.string());
    auto r2 = run_experiment(cfg, dir2.string());
    auto j1 = r1.report.to_json();
    auto j2 = r2.report.to_json();
    j1.erase("wall_seconds");
    j2.erase("wall_seconds");
    CHECK(j1.dump() == j2.dump());

    // a different seed changes the payload
    auto r3 = run_experiment(cfg, temp_dir("det3").string(), std::uint64_t{43});
    auto j3 = r3.report.to_json();
    j3.erase("wall_seconds");
    CHECK(j1.dump() != j3.dump());
}

TEST_CASE("map-audit task reports the empirical constant") {
    auto doc = nlohmann::ordered_json::parse(R"({
        "seed": 5,
        "space": {"kind": "minkowski", "dim": 2},
        "task": "map-audit",
        "params": {
            "map": {"name": "scaling", "lambda": 2.0},
            "region": {"kind": "box", "lo": [0, 0], "hi": [1, 1]},
            "pairs": 2000
        }
    })");
    const auto result = run_experiment(ExperimentConfig::from_json(doc),
                                       temp_dir("audit").string());
    CHECK(result.exit_code == 0);
    CHECK(result.report.payload.at("empirical_lambda").get<double>() ==
          doctest::Approx(2.0));
}

TEST_CASE("restricted-measure on the segment reports infinity, exit 0") {
    auto doc = nlohmann::ordered_json::parse(R"({
        "seed": 9,
        "space": {"kind": "minkowski", "dim": 2},
        "task": "restricted-measure",
        "params": {
            "region": {"kind": "box", "lo": [0, 0], "hi": [0, 1]},
            "N": 1.0,
            "mode": "V",
            "delta_schedule": [0.2, 0.1],
            "sample_budget": 500
        }
    })");
    const auto result = run_experiment(ExperimentConfig::from_json(doc),
                                       temp_dir("restr").string());
    CHECK(result.exit_code == 0);
    CHECK(result.report.payload.at("value") == "inf");
}

TEST_CASE("warped-product space from config") {
    auto doc = nlohmann::ordered_json::parse(R"({
        "seed": 3,
        "space": {"kind": "warped_product", "interval": [-1, 3],
                  "warp": {"form": "constant", "value": 1.0},
                  "base": {"kind": "euclidean", "dim": 1}},
        "task": "axioms",
        "params": {
            "region": {"kind": "box", "lo": [0, 0], "hi": [1, 1]},
            "samples": 200
        }
    })");
    const auto result = run_experiment(ExperimentConfig::from_json(doc),
                                       temp_dir("warp").string());
    CHECK(result.exit_code == 0);
}

TEST_CASE("dimension, nulldist, and volume-comparison tasks run end to end") {
    auto dim = nlohmann::ordered_json::parse(R"({
        "seed": 21,
        "space": {"kind": "minkowski", "dim": 2},
        "task": "dimension",
        "params": {
            "region": {"kind": "box", "lo": [0, 0], "hi": [1, 1]},
            "N_list": [1.5, 2.5],
            "mode": "W",
            "delta_schedule": [0.3, 0.15],
            "sample_budget": 3000
        }
    })");
    const auto dres = run_experiment(ExperimentConfig::from_json(dim),
                                     temp_dir("dim").string());
    CHECK(dres.exit_code == 0);
    CHECK(dres.report.payload.at("entries").size() == 2);

    auto nd = nlohmann::ordered_json::parse(R"({
        "seed": 22,
        "space": {"kind": "minkowski", "dim": 2},
        "task": "nulldist",
        "params": {
            "box": {"kind": "box", "lo": [0, 0], "hi": [0.6, 0.6]},
            "pitch": 0.05,
            "queries": [[[0, 0], [0, 0.5]]],
            "diamond_checks": 6,
            "bilipschitz_pairs": 50
        }
    })");
    const auto dir = temp_dir("nd");
    const auto nres = run_experiment(ExperimentConfig::from_json(nd), dir.string());
    CHECK(nres.exit_code == 0);
    CHECK(std::abs(nres.report.payload.at("queries")[0].at("value").get<double>() - 0.5) <=
          0.05);
    CHECK(fs::exists(dir / "experiment_edges.csv"));
    CHECK(fs::exists(dir / "experiment_distance_histogram.csv"));

    auto vc = nlohmann::ordered_json::parse(R"({
        "seed": 23,
        "space": {"kind": "minkowski", "dim": 2},
        "task": "volume-comparison",
        "params": {
            "map": {"name": "scaling", "lambda": 2.0},
            "region": {"kind": "box", "lo": [0, 0], "hi": [1, 1]},
            "N": 2.0,
            "mode": "W",
            "delta_schedule": [0.3, 0.15],
            "sample_budget": 3000
        }
    })");
    const auto vres = run_experiment(ExperimentConfig::from_json(vc),
                                     temp_dir("vc").string());
    CHECK(vres.exit_code == 0);
    CHECK(vres.report.payload.at("ratio").get<double>() == doctest::Approx(4.0).epsilon(0.12));
}

TEST_CASE("family JSON round trip") {
    auto mink = make_minkowski(2);
    const Region square = Region::box(mink, {0, 0}, {1, 1});
    LatticeOptions opts;
    opts.ground_hint = 1000;
    const auto fam = generate_lattice_family(*mink, square, 0.25, CoverMode::W, 2.0, opts);
    const auto j = family_to_json(fam);
    const auto back = family_from_json(*mink, j);
    REQUIRE(back.diamonds.size() == fam.diamonds.size());
    CHECK(back.delta == fam.delta);
    for (std::size_t i = 0; i < fam.diamonds.size(); i += 11) {
        CHECK(back.diamonds[i].a.x == fam.diamonds[i].a.x);
        CHECK(back.diamonds[i].tau == doctest::Approx(fam.diamonds[i].tau));
    }
}

TEST_CASE("loglog emitter writes a header even for empty series") {
    const auto dir = temp_dir("csvempty");
    MeasureEstimate empty;
    write_loglog_csv((dir / "empty.csv").string(), {&empty});
    std::ifstream in(dir / "empty.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "N,log_delta,log_value");
    CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("infeasible coverage exits with code 2") {
    // region flush against the warp-interval boundary: lattice rows whose
    // vertices would leave the interval are skipped, so edge samples stay
    // uncovered
    auto doc = nlohmann::ordered_json::parse(R"({
        "seed": 4,
        "space": {"kind": "warped_product", "interval": [0, 1],
                  "warp": {"form": "constant", "value": 1.0},
                  "base": {"kind": "euclidean", "dim": 1}},
        "task": "measure",
        "params": {
            "region": {"kind": "box", "lo": [0, 0], "hi": [1, 1]},
            "N": 2.0,
            "mode": "V",
            "delta_schedule": [0.2],
            "sample_budget": 2000
        }
    })");
    const auto result = run_experiment(ExperimentConfig::from_json(doc),
                                       temp_dir("infeas").string());
    CHECK(result.exit_code == 2);
    CHECK(result.report.payload.contains("uncovered_point"));
}

TEST_CASE("CLI binary: exit codes for good and bad configs") {
    const auto dir = temp_dir("cli");
    {
        std::ofstream out(dir / "good.json");
        out << measure_config().dump(2);
    }
    {
        auto bad = measure_config();
        bad["params"]["delta_schedule"] = {0.1, 0.2};
        std::ofstream out(dir / "bad.json");
        out << bad.dump(2);
    }
    const std::string cli = TAUCOVER_CLI_PATH;
    const std::string base = "cd " + dir.string() + " && " + cli + " run ";
    CHECK(std::system((base + "good.json --out " + (dir / "out").string() +
                       " > /dev/null 2>&1").c_str()) == 0);
    const int bad_rc = std::system((base + "bad.json > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(bad_rc) == 1);
}
